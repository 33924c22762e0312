"""Built-in example specs.

Every entry is plain spec text, so ``dorfman gallery NAME`` prints
something that can be saved, edited and fed back to any command. The
``provenance`` line says where the example comes from and what it is
expected to do.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    provenance: str
    text: str


_ENTRIES: Dict[str, GalleryEntry] = {}


def _add(name: str, provenance: str, text: str):
    body = text.strip("\n")
    header = f"# {name}\n# provenance: {provenance}\n"
    _ENTRIES[name] = GalleryEntry(name, provenance, header + body + "\n")


def _coords(n: int) -> List[str]:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]


def standard(n: int) -> GalleryEntry:
    if not 0 <= n <= 8:
        raise KeyError(f"standard-r{n}: dimension must be between 0 and 8")
    coords = ", ".join(_coords(n)) or "-"
    text = (f"# standard-r{n}\n"
            f"# provenance: textbook; T + T* of R^{n} with the untwisted Dorfman bracket. "
            f"Passes every axiom.\n"
            f"[chart]\ncoordinates = {coords}\n\n[twisted standard]\n")
    return GalleryEntry(f"standard-r{n}", "textbook untwisted standard structure", text)


_add("twisted-r3",
     "textbook; T + T* of R^3 twisted by the closed 3-form dx^dy^dz. Passes every axiom.",
     """
[chart]
coordinates = x, y, z

[twisted twisted]
H.x.y.z = 1
""")

_add("nonclosed-r4",
     "derived; the twist x1 dx2^dx3^dx4 has d H = dx1^dx2^dx3^dx4 != 0, so building needs "
     "--force and Jacobi then fails on a frame triple of coordinate fields.",
     """
[chart]
coordinates = x1, x2, x3, x4

[twisted nonclosed]
H.x2.x3.x4 = x1
""")

_add("so3-point",
     "textbook; a Courant algebroid over a point is a quadratic Lie algebra, here so(3) with "
     "the invariant form delta_ij.",
     """
[chart]
coordinates = -

[bundle so3]
frame = e1, e2, e3
pairing.e1 = e1: 1
pairing.e2 = e2: 1
pairing.e3 = e3: 1
bracket.e1.e2 = e3: 1
bracket.e2.e1 = e3: -1
bracket.e2.e3 = e1: 1
bracket.e3.e2 = e1: -1
bracket.e3.e1 = e2: 1
bracket.e1.e3 = e2: -1
""")

_add("merker-r2",
     "constructed; T + T* of R^2 matched with V + V* (V trivial of rank 2, hyperbolic pairing). "
     "The connection is flat, nabla = d h (x) diag(1, -1, -1, 1) with h = x + x*y, which "
     "preserves the pairing. Passes the matched-pair conditions and every axiom of the sum.",
     """
[chart]
coordinates = x, y

[twisted CM]

[bundle V]
frame = v1, v2, w1, w2
pairing.v1 = w1: 1
pairing.v2 = w2: 1
pairing.w1 = v1: 1
pairing.w2 = v2: 1

[connection right]
domain = CM
acted = V
table.del_x.v1 = v1: y + 1
table.del_x.v2 = v2: -y - 1
table.del_x.w1 = w1: -y - 1
table.del_x.w2 = w2: y + 1
table.del_y.v1 = v1: x
table.del_y.v2 = v2: -x
table.del_y.w1 = w1: -x
table.del_y.w2 = w2: x

[matched-pair merker]
first = CM
second = V
right = right
""")

_add("complex-c1",
     "textbook; C^1 with its holomorphic and antiholomorphic halves. With one complex dimension "
     "every 3-form vanishes, so the pair is untwisted and its sum is (T + T*) (x) C.",
     """
[chart]
coordinates = z, zb
field = gaussian-rational

[complex-pair c1]
""")

_add("complex-c2-h21",
     "constructed; C^2 twisted by the closed form H = dz1^dz2^dzb1 + i dz1^dzb1^dzb2, which has "
     "only (2,1) and (1,2) parts, so both connections carry a twist term.",
     """
[chart]
coordinates = z1, z2, zb1, zb2
field = gaussian-rational

[complex-pair c2]
H.z1.z2.zb1 = 1
H.z1.zb1.zb2 = i
""")

_add("regular-abelian-r2",
     "constructed; abelian rank-1 quadratic bundle over R^2 with curvature R(del_x, del_y) = g1 "
     "and trivial connection. The normalization audit singles out one scale.",
     """
[chart]
coordinates = x, y

[lie-algebra a]
basis = g1
pairing.g1 = g1: 1

[regular abelian]
algebra = a
curvature.x.y = g1: 1
""")

_add("regular-so3",
     "constructed; so(3) bundle over R^2 with connection nabla_x = ad g3, nabla_y = 0, which is "
     "flat, metric, and acts by derivations.",
     """
[chart]
coordinates = x, y

[lie-algebra g]
basis = g1, g2, g3
structure.g1.g2 = g3: 1
structure.g2.g3 = g1: 1
structure.g3.g1 = g2: 1
pairing.g1 = g1: 1
pairing.g2 = g2: 1
pairing.g3 = g3: 1

[regular so3]
algebra = g
nabla.x.g1 = g2: 1
nabla.x.g2 = g1: -1
""")

_add("dirac-graph-omega",
     "textbook; the graph of the closed 2-form dx^dy in T + T* of R^2 is a Dirac structure.",
     """
[chart]
coordinates = x, y

[twisted CM]

[graph omega]
host = CM
type = two-form
omega.x.y = 1
""")

_add("dirac-graph-omega-z",
     "derived; the graph of z dx^dy on R^3 is isotropic but not closed under the bracket, since "
     "d(z dx^dy) = dz^dx^dy != 0.",
     """
[chart]
coordinates = x, y, z

[twisted CM]

[graph omega]
host = CM
type = two-form
omega.x.y = z
""")

_add("dirac-graph-pi",
     "textbook; the graph of the Poisson bivector x del_x^del_y on R^2 (every bivector in two "
     "dimensions is Poisson).",
     """
[chart]
coordinates = x, y

[twisted CM]

[graph pi]
host = CM
type = bivector
pi.x.y = x
""")

_PORT_BASE = """
[chart]
coordinates = x, y

[twisted CM]

[bundle V]
frame = e1, e2, f1, f2
pairing.e1 = f1: 1
pairing.e2 = f2: 1
pairing.f1 = e1: 1
pairing.f2 = e2: 1

[connection right]
domain = CM
acted = V
table.del_x.e1 = e2: 1
table.del_x.f2 = f1: -1

[matched-pair port]
first = CM
second = V
right = right

[graph omega]
host = CM
type = two-form
omega.x.y = 1

[graph L]
host = V
type = pairing-map
vectors = e1, e2
duals = f1, f2

[matched-dirac split]
pair = port
first = omega
second = L
"""

_add("port-hamiltonian",
     "constructed; T + T* of R^2 matched with E + E* (rank 2, flat nilpotent connection "
     "nabla_x e1 = e2). With omega = dx^dy and the port map A(dx) = -e2, the map A o omega# "
     "sends del_x to e2, which is parallel, so the port graph is Dirac in the matched sum.",
     _PORT_BASE + """
[graph ph]
host = port
type = port
vectors = e1, e2
duals = f1, f2
omega.x.y = 1
A.e2.x = -1
""")

_add("port-hamiltonian-broken",
     "derived; same data with A(dx) = -e1, so A o omega# sends del_x to e1, which is not "
     "parallel; integrability fails.",
     _PORT_BASE + """
[graph ph]
host = port
type = port
vectors = e1, e2
duals = f1, f2
omega.x.y = 1
A.e1.x = -1
""")


_STANDARD = re.compile(r"standard-r(\d+)\Z")


def names() -> List[str]:
    return ["standard-rN"] + list(_ENTRIES)


def get(name: str) -> GalleryEntry:
    m = _STANDARD.match(name)
    if m:
        return standard(int(m.group(1)))
    try:
        return _ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown gallery entry {name!r}; try list-gallery") from None


def text(name: str) -> str:
    return get(name).text


def is_gallery_name(name: str) -> bool:
    try:
        get(name)
    except KeyError:
        return False
    return True
