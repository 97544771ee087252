"""Factor a left adjoint distributor as an epi followed by an extremal mono.

The example comes from ``fixtures/quantized_two.qd``; the middle category
is cut out of the presingleton space of the target.
"""

from pathlib import Path

from qloid.distributor import (
    compose_distributors,
    factorize,
    is_epi,
    is_extremal_mono,
    is_iso,
    mediating_distributor,
    right_adjoint_of,
)
from qloid.fileformat import parse_files

ws = parse_files([Path(__file__).resolve().parent.parent / "fixtures" / "quantized_two.qd"])
phi = ws.distributors["F"]
X, Y = phi.source, phi.target

print("phi:", {k: v for k, v in phi.values_table().items() if v != "bot"})
print("right adjoint:", {k: v for k, v in right_adjoint_of(phi).values_table().items() if v != "bot"})
print("phi itself is epi:", is_epi(phi), " extremal mono:", is_extremal_mono(phi))

fac = factorize(phi)
print(f"\nmiddle category has {len(fac.middle)} elements:")
for mu in fac.middle.elements:
    print("  ", mu.label(), "of type", fac.middle.types[mu])
print("theta ⊗ xi == phi:", compose_distributors(fac.theta, fac.xi) == phi)
print("xi epi:", is_epi(fac.xi), " theta extremal mono:", is_extremal_mono(fac.theta))

again = factorize(phi)
print("second factorization is isomorphic:", is_iso(mediating_distributor(fac, again)))
