"""Walk through square classes, Hilbert symbols and the classification of forms.

Run: python3 demos/01_square_classes_and_forms.py
"""

from localgp.padic import all_square_classes, hilbert, square_class
from localgp.quadspace import QuadraticSpace, classify, extract_eta, hyperbolic, is_isomorphic

for p in (2, 3, 5):
    classes = all_square_classes(p)
    print(f"Q_{p}: {len(classes)} square classes: {', '.join(map(str, classes))}")

# The Hilbert symbol table at p = 3. Each row has a -1 unless the class is trivial.
p = 3
classes = all_square_classes(p)
print("\nHilbert symbol at p = 3")
print("      " + "".join(f"{str(b):>4}" for b in classes))
for a in classes:
    print(f"{str(a):>4}  " + "".join(f"{hilbert(a, b):>4}" for b in classes))

# A rational number lands in its class; squares do not matter.
x = square_class(18, 3)
print(f"\n18 lies in the class of {x} at p = 3 (18 = 2 * 3^2)")

# Forms are classified by dimension, discriminant and Hasse invariant.
print("\nClasses of dimension 4 and trivial discriminant at p = 3:")
for q in classify(4, 1, 3):
    print(f"  diag {[str(c) for c in q.diag]}  hasse {q.hasse:+d}  witt index {q.witt_index}")

# The split one is two hyperbolic planes.
split, aniso = classify(4, 1, 3)
print("split form is H + H:", is_isomorphic(split, hyperbolic(2, 3)))
print("other form is anisotropic:", aniso.witt_index == 0)

# A dimension-2 form with nontrivial discriminant is a scaled norm form.
q = QuadraticSpace.from_rationals([1, -2], 5)
print(f"\n<1, -2> at p = 5 has discriminant {q.disc} and eta = {extract_eta(q)}")
