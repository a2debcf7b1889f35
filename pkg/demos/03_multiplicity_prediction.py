"""Predict which pair in two packets has multiplicity one.

phi = eta1 + eta2 (quadratic characters) is a parameter for SO(2);
phi' = eta' (x) sp(2) is a parameter for SO(3). Root numbers come from
Gauss sums, the spaces from the classification.

Run: python3 demos/03_multiplicity_prediction.py
"""

from localgp.engine import m_pairing, predict
from localgp.padic import all_square_classes, square_class
from localgp.quadspace import build_z_form, classify, mu
from localgp.rootnumbers import AbelianIrred, MultChar, oracle_table
from localgp.wdparam import WDParameter, delta_of

p = 5
e1 = AbelianIrred("e1", MultChar.quadratic(square_class(10, p)), 1)
e2 = AbelianIrred("e2", MultChar.quadratic(square_class(5, p)), 1)
f = AbelianIrred("f", MultChar.quadratic(square_class(10, p)), 2)
phi = WDParameter.of([(e1.descriptor(), 1), (e2.descriptor(), 1)])
phi_prime = WDParameter.of([(f.descriptor(), 1)])
table = oracle_table([e1, e2], [f])

print("root number table:")
for (i, ip), eps in sorted(table.entries.items()):
    print(f"  eps({i} x {ip}) = {eps.to_json()}")

delta = delta_of(phi, p)
print(f"\ndelta(phi) = {delta}")
for q in classify(phi.N, delta, p):
    for nu0 in all_square_classes(p):
        q_prime = q + build_z_form(0, -nu0, p)
        pred = predict(phi, phi_prime, q, q_prime, nu0, table)
        kind = "split" if mu(q_prime) == 1 else "non-split"
        if pred.vanishing:
            print(f"q hasse {q.hasse:+d}, nu0 {nu0}: SO(q') {kind}, E = {pred.E:+d} -> every multiplicity is 0")
            continue
        eps, eps_p = pred.distinguished
        print(f"q hasse {q.hasse:+d}, nu0 {nu0}: SO(q') {kind}, E = {pred.E:+d} -> "
              f"distinguished pair {eps.to_json()} / {eps_p.to_json()}")
        s = pred.group.z
        s_prime = tuple(0 for _ in pred.group_prime.basis)
        print(f"    m(phi, z; phi', 1) = {m_pairing(s, s_prime, pred)}")
