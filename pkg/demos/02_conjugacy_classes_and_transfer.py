"""From a family xi to quadratic spaces, coset labels and transfer factors.

Run: python3 demos/02_conjugacy_classes_and_transfer.py
"""

from localgp.classparam import admissible_coset_even, build_qxic, coset_label
from localgp.padic import all_square_classes
from localgp.quadspace import classify
from localgp.transfer import c_terms_even, delta_element, poly_P, tf_even
from localgp.xi import XiFamily, enumerate_c, norm_one_from, split_entry


def signs(c):
    return "(" + ", ".join(f"{s:+d}" for _, s in c.signs) + ")"


p = 5
# Two norm-one elements in different quadratic fields, plus a split pair (3, 1/3).
xi = XiFamily(p, (norm_one_from(2, 1, 1), norm_one_from(5, 1, 2), split_entry(3)))
print(f"xi has {len(xi)} entries, d = {xi.d}, delta = {xi.delta}, regular = {xi.is_regular()}")
print("coefficients of P:", [str(a) for a in poly_P(xi).coeffs])
print("Delta(xi) = P(1) =", delta_element(xi))

# Each sign vector c gives a space q_{xi,c}; the two ambient classes split C(xi) in half.
forms = classify(xi.d, xi.delta, p)
for k, q in enumerate(forms):
    coset = admissible_coset_even(q, xi)
    print(f"\nambient class {k}: hasse {q.hasse:+d}, label {coset_label(coset):+d}")
    for c in coset:
        built = build_qxic(xi, c)
        print(f"  c = {signs(c)}  ->  q_xi,c has hasse {built.hasse:+d}")

# C_i are rational: the square-root parts cancel.
c = enumerate_c(xi)[0]
print(f"\nC_i for c = {signs(c)}:", {i: str(v) for i, v in c_terms_even(xi, c).items()})

# Transfer factors for the split xi = xi_plus + xi_minus, over every nu0.
xi_plus = XiFamily(p, xi.entries[:1])
xi_minus = XiFamily(p, xi.entries[1:])
q = forms[0]
c = admissible_coset_even(q, xi)[0]
print("\ntransfer factor by nu0:")
for nu0 in all_square_classes(p):
    print(f"  nu0 = {nu0}: {tf_even(q, xi_plus, xi_minus, c, nu0):+d}")
