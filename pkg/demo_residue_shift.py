from characters import chi
from families import paper_witness_germ
from germ_groupoid import (INVERTIBLES, Germ, SubgroupoidSpec, germ_eq, in_iso_interior,
                           in_subgroupoid, isotropy_at, rtp_witness)
from inverse_hull import apply, left_mult, render
from lcsc_core import nx_zmod

n = 6
backend = nx_zmod(n)
g = paper_witness_germ(n)

print('--- THE MAP ---')
print(render(g.s.s))
for a in (1, 2, 3):
    x = backend.arrow(n * a, 0)
    print(f'{x} -> {apply(g.s, x)}')

print('\n--- AGAINST THE GLOBAL UNITS ---')
for u in backend.units():
    print(u, germ_eq(g, Germ(left_mult(u), g.chi)))

print('\n--- INTERIOR OF THE ISOTROPY ---')
print('interior:', in_iso_interior(g))
print('invertibles:', in_subgroupoid(g, SubgroupoidSpec(INVERTIBLES)))

print('\n--- ISOTROPY AND CERTIFICATE AT chi(3,1) ---')
base = chi(backend.arrow(3, 1))
iso = isotropy_at(base)
print(f'order {iso.order}, cyclic: {iso.is_cyclic()}')
certificate = rtp_witness(base)
print('gamma:', certificate.gamma)
for generator, image in certificate.checked:
    print(f'  {generator} -> {image}')
