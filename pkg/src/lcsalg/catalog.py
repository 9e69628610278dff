"""Built-in catalog: every algebra, certificate and group model used by the tool.

Each expectation carries a provenance tag:
  PAPER    stated in the source text,
  DERIVED  computed independently (hand or brute-force oracle),
  TRIVIAL  immediate from the definitions.
Unknowns are never encoded as expectations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .exactmath import RatMatrix
from .liealg import KForm, LieAlgebra, abelian, algebra_from_differentials
from .notation import parse_form_expr, parse_structure_notation
from . import polyforms as pf

PAPER, DERIVED, TRIVIAL = "PAPER", "DERIVED", "TRIVIAL"


@dataclass(frozen=True)
class Expectation:
    value: object
    provenance: str
    source: str = ""

    def to_json(self):
        return {"value": self.value, "provenance": self.provenance, "source": self.source}


@dataclass
class CatalogEntry:
    key: str
    label: str
    algebra: LieAlgebra
    notation: str | None = None
    names: dict = field(default_factory=dict)          # {"BM": ..., "CFGU": ...}
    certificates: dict = field(default_factory=dict)   # omega, eta, phi, sigma, theta, J
    expected: dict = field(default_factory=dict)       # check name -> Expectation
    tags: frozenset = frozenset()
    notes: dict = field(default_factory=dict)          # informational, never checked

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def to_json(self):
        certs = {}
        for k, v in self.certificates.items():
            certs[k] = v.to_json() if isinstance(v, KForm) else v.to_json()
        return {"key": self.key, "label": self.label, "names": self.names, "notation": self.notation,
                "dim": self.dim, "tags": sorted(self.tags), "certificates": certs,
                "expected": {k: e.to_json() for k, e in self.expected.items()}, "notes": self.notes}


@dataclass
class GroupEntry:
    """A group-level model together with the identities it must satisfy."""
    key: str
    label: str
    model: pf.GroupModel | None
    algebra_key: str | None = None        # catalog algebra the coframe must reproduce
    coframe_algebra: LieAlgebra | None = None
    witnesses: list = field(default_factory=list)   # (name, callable -> list[CheckResult])
    provenance: str = PAPER
    tags: frozenset = frozenset()

    def run_checks(self) -> list[pf.CheckResult]:
        out: list[pf.CheckResult] = []
        if self.model is not None:
            out.extend(self.model.run_checks())
            if self.coframe_algebra is not None:
                forms = [self.model.forms[k] for k in self.model.coframe]
                got = pf.coframe_algebra(self.model.law, forms)
                ok = got.structure_constants() == self.coframe_algebra.structure_constants()
                out.append(pf.CheckResult("coframe_structure_equations", ok,
                                          "" if ok else f"got {got}, expected {self.coframe_algebra}"))
        for name, fn in self.witnesses:
            for r in fn():
                out.append(pf.CheckResult(f"{name}:{r.name}" if r.name != name else name, r.ok, r.detail))
        return out


def _f(text: str, dim: int) -> KForm:
    return parse_form_expr(text, dim)


def _nota(key, notation, label, omega=None, eta=None, tags=(), names=None, expected=None, notes=None):
    alg = parse_structure_notation(notation, label)
    certs = {}
    if omega:
        certs["omega"] = _f(omega, alg.dim)
    if eta:
        certs["eta"] = _f(eta, alg.dim)
    return CatalogEntry(key, label, alg, notation, names or {}, certs, expected or {}, frozenset(tags), notes or {})


TABLE1 = [
    # notation, omega, eta, BM, CFGU, symplectic, complex
    ("(0,0,0,0,0,12+34)", "e5", "e6", "L_{5,1}+A_1", "h_3", False, True),
    ("(0,0,0,0,12,15+34)", "e2", "e6", "L_{6,3}", "h_20", False, False),
    ("(0,0,0,0,12,15+23)", "e4", "e6", "L_{5,3}+A_1", "h_9", True, True),
    ("(0,0,0,12,13,15+24)", "e3", "e6", "L_{6,7}", "h_18", False, False),
    ("(0,0,0,12,13,24+35)", "e1", "e6", "L_{6,8}^+", "h_19^-", False, True),
    ("(0,0,0,12,13,24-35)", "e1", "e6", "L_{6,8}^-", "h_19^+", False, False),
    ("(0,0,0,12,14,15+24)", "e3", "e6", "L_{5,6}+A_1", "h_22", True, False),
    ("(0,0,0,12,14,15+23+24)", "e3", "e6", "L_{6,14}", "h_24", True, False),
    ("(0,0,0,12,14+23,15-34)", "e2", "e6", "L_{6,15}", "h_27", True, False),
    ("(0,0,12,13,14,25-34)", "e1", "e6", "L_{6,20}", "h_31", False, False),
    ("(0,0,12,13,14+23,25-34)", "e1", "e6", "L_{6,22}", "h_32", False, False),
]

# b_1 per row: the nonzero differentials are independent, so b_1 counts the zero slots
TABLE1_B1 = (5, 4, 4, 3, 3, 3, 3, 3, 3, 2, 2)


def _dimtag(dim: int) -> str:
    # "dim6" is reserved for the eleven Table-1 rows
    return "dim6-extra" if dim == 6 else f"dim{dim}"


def _table1_entries() -> list[CatalogEntry]:
    out = []
    for i, (nota, om, et, bm, cfgu, symp, cplx) in enumerate(TABLE1, 1):
        exp = {
            "lcs": Expectation(True, PAPER, "Table 1 (omega, eta) columns"),
            "symplectic": Expectation(symp, PAPER, "Table 1 Symplectic column"),
            "nilpotent": Expectation(True, PAPER, "Table 1 lists nilpotent algebras"),
            "filtration": Expectation("Passes", PAPER, "f_m = 1 for nilpotent lcs algebras"),
            "kind": Expectation("FirstKind", PAPER, "nilpotent lcs structures are of the first kind"),
            "betti1": Expectation(TABLE1_B1[i - 1], DERIVED, "zero slots of the notation"),
        }
        out.append(_nota(f"table1-{i:02d}", nota, cfgu, om, et, ("dim6", "table1", "nilpotent"),
                         {"BM": bm, "CFGU": cfgu}, exp, {"complex_column": cplx}))
    return out


def heis_plus_r(n: int) -> LieAlgebra:
    """heis_{2n-1} + R in the basis (x1, y1, ..., x_{n-1}, y_{n-1}, z, w)."""
    dim = 2 * n
    z = 2 * n - 2
    dz = KForm.zero(dim, 2)
    for i in range(n - 1):
        dz = dz - KForm.basis(dim, 2 * i, 2 * i + 1)
    d = [None] * dim
    d[z] = dz
    return algebra_from_differentials(dim, d, f"heis_{2 * n - 1}+R")


def h_family(n: int, with_r: bool) -> LieAlgebra:
    """h_{2n-1} (or g_{2n} = h_{2n-1} + R) in the basis (a1, b1, ..., a_{n-1}, b_{n-1}, eta[, omega])."""
    dim = 2 * n if with_r else 2 * n - 1
    eta = 2 * n - 2
    d = [None] * dim
    d[2 * (n - 2) + 1] = KForm.basis(dim, 0, 2 * (n - 2))          # d b_{n-1} = a_1 ^ a_{n-1}
    de = KForm.zero(dim, 2)
    for i in range(n - 1):
        de = de + KForm.basis(dim, 2 * i, 2 * i + 1)
    d[eta] = de
    return algebra_from_differentials(dim, d, f"g_{2 * n}" if with_r else f"h_{2 * n - 1}")


def g2n_complex_structure(n: int) -> RatMatrix:
    """J(X1) = -X_{n-1}, J(Y1) = -Y_{n-1}, J(X_i) = Y_i (1 < i < n-1), J(Z) = -T, with J^2 = -1."""
    dim = 2 * n
    cols = [[0] * dim for _ in range(dim)]

    def setj(src, dst, sign):
        cols[src][dst] = sign
        cols[dst][src] = -sign

    X = lambda i: 2 * (i - 1)
    Y = lambda i: 2 * (i - 1) + 1
    setj(X(1), X(n - 1), -1)
    setj(Y(1), Y(n - 1), -1)
    for i in range(2, n - 1):
        setj(X(i), Y(i), 1)
    setj(2 * n - 2, 2 * n - 1, -1)
    return RatMatrix.from_columns(cols)


def _family_entries() -> list[CatalogEntry]:
    out = []
    for n in (2, 3, 4):
        alg = heis_plus_r(n)
        dim = 2 * n
        out.append(CatalogEntry(
            f"heis{2 * n - 1}+R", alg.label, alg, None, {},
            {"omega": KForm.basis(dim, dim - 1), "eta": KForm.basis(dim, dim - 2)},
            {"betti1": Expectation(2 * n - 1, PAPER, "b_1 of heis_{2n-1} + R"),
             "lcs": Expectation(True, PAPER, "contact algebra times R"),
             "nilpotent": Expectation(True, TRIVIAL)},
            frozenset({"families", "nilpotent", _dimtag(dim)})))
    for n in (3, 4, 5):
        h = h_family(n, False)
        g = h_family(n, True)
        dh, dg = h.dim, g.dim
        hexp = {"contact": Expectation(True, PAPER, "eta is a contact form on h_{2n-1}"),
                "betti1": Expectation(2 * n - 3, DERIVED if n > 3 else PAPER,
                                      "closed: all a_i and b_1..b_{n-2}")}
        out.append(CatalogEntry(f"h{dh}", h.label, h, None, {}, {"theta": KForm.basis(dh, dh - 1)}, hexp,
                                frozenset({"families", "nilpotent", _dimtag(dh)})))
        gexp = {
            "lcs": Expectation(True, PAPER, "contact algebra times R"),
            "symplectic": Expectation(n == 3, PAPER, "symplectic only for n = 3"),
            "complex": Expectation(True, PAPER, "Nijenhuis tensor of J vanishes"),
            "nilpotent": Expectation(True, PAPER),
            "betti1": Expectation(2 * n - 2, PAPER if n in (3, 4) else DERIVED, "b_1(g_{2n}) = 2n - 2"),
        }
        certs = {"omega": KForm.basis(dg, dg - 1), "eta": KForm.basis(dg, dg - 2), "J": g2n_complex_structure(n)}
        if n == 3:
            # sigma = a1^omega + a2^eta + b1^b2
            certs["sigma"] = KForm.basis(dg, 0, 5) + KForm.basis(dg, 2, 4) + KForm.basis(dg, 1, 3)
        out.append(CatalogEntry(f"g{dg}", g.label, g, None, {}, certs, gexp,
                                frozenset({"families", "nilpotent", _dimtag(dg)})))
    return out


def _misc_entries() -> list[CatalogEntry]:
    out = []
    out.append(_nota("g1", "(0,0,0,12)", "g_1", "e3", "e4", ("dim4", "nilpotent"), expected={
        "lcs": Expectation(True, PAPER, "dim-4 classification"),
        "lcs_search": Expectation("Exists", PAPER, "dim-4 classification"),
        "symplectic": Expectation(True, PAPER, "both dim-4 lcs algebras are symplectic"),
        "filtration": Expectation("Passes", PAPER)}))
    out.append(_nota("g2", "(0,0,12,13)", "g_2", "e2", "e4", ("dim4", "nilpotent"), expected={
        "lcs": Expectation(True, PAPER, "dim-4 classification"),
        "lcs_search": Expectation("Exists", PAPER, "dim-4 classification"),
        "symplectic": Expectation(True, PAPER, "both dim-4 lcs algebras are symplectic"),
        "filtration": Expectation("Passes", PAPER)}))
    r4 = abelian(4, "R^4")
    out.append(CatalogEntry("R4", "R^4", r4, "(0,0,0,0)", {}, {}, {
        "lcs_search": Expectation("ProvedImpossible", PAPER, "the abelian algebra is not lcs"),
        "symplectic": Expectation(True, TRIVIAL, "e12 + e34"),
        "betti1": Expectation(4, TRIVIAL)}, frozenset({"dim4", "nilpotent"})))
    # the 4-dim group of the mapping-torus example, basis (U, V, A, B), dual (omega, eta, alpha, beta)
    g4 = _nota("g4-group", "(0,34,-14,0)", "Lie(G) of the dim-4 mapping torus", "e1", "e2",
               ("dim4", "nilpotent", "groups"), expected={
                   "lcs": Expectation(True, PAPER, "(omega, eta) on the dim-4 nilmanifold"),
                   "betti1": Expectation(2, PAPER, "b_1 = 2"),
                   "symplectic": Expectation(True, PAPER, "sigma = omega^alpha + eta^beta"),
                   "complex": Expectation(False, PAPER, "J(U) = A, J(V) = B is not integrable")})
    g4.certificates["sigma"] = _f("e13+e24", 4)
    # J(U)=A, J(V)=B, J(A)=-U, J(B)=-V; columns are images
    g4.certificates["J"] = RatMatrix.from_columns([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    out.append(g4)
    d41 = parse_structure_notation("(12+34,0,-23,0)", "d_{4,1}")
    out.append(CatalogEntry("d41", "d_{4,1}", d41, "(12+34,0,-23,0)", {},
                            {"phi": _f("2*e12+e34", 4), "omega": _f("e2", 4)},
                            {"exact": Expectation(True, PAPER, "Phi = d_omega e1"),
                             "kind": Expectation("SecondKind", PAPER, "only automorphisms a e_1"),
                             "gphi_dim": Expectation(1, PAPER, "automorphisms a e_1"),
                             "unimodular": Expectation(False, PAPER),
                             "nilpotent": Expectation(False, DERIVED, "solvable, not nilpotent")},
                            frozenset({"dim4", "solvable"})))
    out.append(_nota("L613", "(0,0,0,12,14,15+23)", "L_{6,13}", tags=("dim6-extra", "nilpotent", "nonlcs"), expected={
        "lcs_search": Expectation("NotExists", PAPER, "no contact ideal, so not lcs")}))
    out.append(_nota("h0012131", "(0,0,12,13,14)", "(0,0,12,13,14)", tags=("dim5", "nilpotent", "nonlcs"), expected={
        "contact": Expectation(False, PAPER, "not a contact algebra")}))
    out.append(_nota("h00012141", "(0,0,0,12,14)", "(0,0,0,12,14)", tags=("dim5", "nilpotent", "nonlcs"), expected={
        "contact": Expectation(False, PAPER, "not a contact algebra")}))
    out.append(_nota("fm2", "(0,0,0,0,12,13)", "(0,0,0,0,12,13)", tags=("dim6-extra", "nilpotent", "nonlcs"), expected={
        "filtration": Expectation("ObstructedFmTooBig", DERIVED, "profile (4, 2)"),
        "lcs_search": Expectation("ProvedImpossible", DERIVED)}))
    # dim-6 contact part, first coframe, and its product with R
    h5 = _nota("h5-first", "(0,0,0,12,14+23)", "h = L_{5,3} (first coframe)", tags=("dim5", "nilpotent", "groups"),
               names={"BM": "L_{5,3}"}, expected={
                   "contact": Expectation(True, PAPER, "eta is contact"),
                   "betti1": Expectation(3, PAPER, "b_1(h) = 3")})
    h5.certificates["theta"] = _f("e5", 5)
    out.append(h5)
    hr = _nota("h5+R", "(0,0,0,12,14+23,0)", "h + R (first dim-6 example)", "e6", "e5",
               ("dim6-extra", "nilpotent", "groups"), names={"CFGU": "h_9"}, expected={
                   "lcs": Expectation(True, PAPER), "betti1": Expectation(4, PAPER, "b_1(M) = 4"),
                   "symplectic": Expectation(True, PAPER, "rho is symplectic")})
    # rho = alpha^eta + delta^gamma + beta^omega
    hr.certificates["sigma"] = _f("e15-e34+e26", 6)
    out.append(hr)
    theta5 = _nota("h5-second", "(0,0,0,12,14-23)", "h (second coframe)", tags=("dim5", "nilpotent", "groups"),
                   expected={"contact": Expectation(True, PAPER, "theta is contact"),
                             "betti1": Expectation(3, DERIVED)})
    theta5.certificates["theta"] = _f("e5", 5)
    out.append(theta5)
    # L_{6,22} in the coframe (omega, alpha, beta, gamma, delta, eta) of the second dim-6 example
    l622 = _nota("L622-coframe", "(0,0,-12,-13,-14+23,25-34)", "L_{6,22} (group coframe)", "e1", "e6",
                 ("dim6-extra", "nilpotent", "groups"), names={"BM": "L_{6,22}", "CFGU": "h_32"}, expected={
                     "lcs": Expectation(True, PAPER), "betti1": Expectation(2, PAPER, "b_1 = 2"),
                     "symplectic": Expectation(False, PAPER)})
    out.append(l622)
    return out


# ---------------------------------------------------------------------------
# group models


def _law(coords, mul, label=None):
    return pf.GroupLaw(tuple(coords), tuple(mul), label=label)


def _forms(coords, spec):
    return {k: pf.PolyForm.parse(coords, v) for k, v in spec.items()}


def heis3_law():
    return _law("xyz", ["x+x'", "y+y'", "z+z'+y*x'"], "H (dim 3)")


def g4_law():
    return _law(("x", "y", "z", "t"), ["x+x'+t*y'", "y+y'", "z+z'+t*y'^2/2+y*x'+t*y*y'", "t+t'"], "G (dim 4)")


def h5_law():
    return _law(("x", "y", "z", "t", "w"), ["x+x'", "y+y'", "z+z'+x*x'", "t+t'+y*x'", "w+w'+t*x'+y*z'"], "H (dim 5)")


def g6_law():
    return _law(("x", "y", "z", "t", "w", "s"), [
        "x+x'", "y+y'+s*x'", "z+z'+x*x'+s*y'+s^2*x'/2",
        "t+t'+y*x'+s*z'+s^2*y'/2+s^3*x'/6",
        "w+w'+t*x'+y*z'+s*(x'*z'+y*y'+y'^2/2-x'^3/3)+s^2*(x'*y'+y*x'/2)+s^3*x'^2/3",
        "s+s'"], "G (dim 6)")


PHI_S5 = ["x", "y+s*x", "z+s*y+s^2*x/2", "t+s*z+s^2*y/2+s^3*x/6",
          "w+s*x*z+s*y^2/2-s*x^3/3+s^2*x*y+s^3*x^2/3"]


def h2n1_coords(n: int) -> tuple:
    c = []
    for i in range(1, n):
        c += [f"x{i}", f"y{i}"]
    return tuple(c) + ("w",)


def s2n2_law(n: int) -> pf.GroupLaw:
    coords = h2n1_coords(n)[:-1]
    mul = []
    for i in range(1, n):
        mul.append(f"x{i}+x{i}'")
        y = f"y{i}+y{i}'"
        if i == 1:
            y += f"+x{n - 1}*x{n - 1}'"
        if i == n - 1:
            y += f"+x1*x{n - 1}'"
        mul.append(y)
    return _law(coords, mul, f"S_{2 * n - 2}")


def s2n2_cocycle(n: int) -> str:
    return "+".join([f"x{j}*y{j}'" for j in range(1, n - 1)] + [f"y{n - 1}*x{n - 1}'"])


def h2n1_law(n: int) -> pf.GroupLaw:
    s = s2n2_law(n)
    w = "w+w'+" + s2n2_cocycle(n)
    return _law(s.coords + ("w",), [str(m) for m in s.mul] + [w], f"H_{2 * n - 1}")


def h2n1_forms(n: int) -> dict:
    coords = h2n1_coords(n)
    spec = {}
    for i in range(1, n - 1):
        spec[f"alpha{i}"] = f"-dx{i}"
    spec[f"alpha{n - 1}"] = f"dx{n - 1}"
    spec["beta1"] = f"dy1-x{n - 1}*dx{n - 1}"
    for i in range(2, n - 1):
        spec[f"beta{i}"] = f"dy{i}"
    spec[f"beta{n - 1}"] = f"dy{n - 1}-x1*dx{n - 1}"
    eta = f"dw-x1*(dy1-x{n - 1}*dx{n - 1})"
    for i in range(2, n - 1):
        eta += f"-x{i}*dy{i}"
    eta += f"-y{n - 1}*dx{n - 1}"
    spec["eta"] = eta
    return _forms(coords, spec)


def _chi_witness(law, phi, action, chi, param):
    return lambda: pf.verify_chi_identities(law, phi, action, chi, param)


def _group_entries(algebras: dict) -> list[GroupEntry]:
    out = []
    # dim-3 Heisenberg group with the strict contactomorphisms phi_t
    H = heis3_law()
    theta = pf.PolyForm.parse(H.coords, "dz-y*dx")
    phi_t = pf.PolyMap.of(H.coords, ["x+t*y", "y", "z+t*y^2/2"])
    m = pf.GroupModel(H, {"alpha": pf.PolyForm.parse(H.coords, "dx"), "beta": pf.PolyForm.parse(H.coords, "dy"),
                          "theta": theta}, ["alpha", "beta", "theta"],
                      pf.LatticeSpec((1, 2, 2)), {"phi_t": (phi_t, "t")}, {"phi_t": ["theta"]}, "H (dim 3)")
    out.append(GroupEntry("group:H3", "Heisenberg group with phi_t", m,
                          coframe_algebra=parse_structure_notation("(0,0,12)"), tags=frozenset({"groups", "dim4"})))
    # dim-4 semidirect product G = H x_phi R
    G = g4_law()
    forms = _forms(G.coords, {"omega": "dt", "eta": "dz-y*dx", "alpha": "dx-t*dy", "beta": "dy"})
    m = pf.GroupModel(G, forms, ["omega", "eta", "alpha", "beta"], pf.LatticeSpec((1, 2, 2, 1)), label="G (dim 4)")

    def g4_assembly(H=H, G=G):
        built = pf.semidirect_group_law(H, phi_t, "t")
        return [pf.CheckResult("semidirect_product", pf.same_law(built, G))]

    # the same group as an lcs extension of R^2
    S = _law("xy", ["x+x'", "y+y'"], "R^2")
    act = pf.PolyMap.of(S.coords, ["x+t*y", "y"])

    def g4_extension(S=S, G=G):
        Hc = pf.central_group_law(S, "y*x'", "z")
        lift = pf.PolyMap.of(Hc.coords, ["z+t*y^2/2", "x+t*y", "y"])
        built = pf.semidirect_group_law(Hc, lift, "t").permuted(G.coords)
        sig = pf.cocycle_two_form(S, "y*x'")
        return [pf.verify_cocycle(S, "y*x'"),
                pf.verify_cocycle_lattice(S, "y*x'", pf.LatticeSpec((1, 2)), 2),
                pf.CheckResult("sigma_nondegenerate", sig[0, 1] != 0, str(sig)),
                pf.verify_lattice_invariance(lift, pf.LatticeSpec((2, 1, 2)), ["t"]),
                pf.CheckResult("lcs_extension_law", pf.same_law(built, G))]

    out.append(GroupEntry("group:G4", "dim-4 nilmanifold group", m, "g4-group", algebras["g4-group"].algebra,
                          [("assembly", g4_assembly), ("chi", _chi_witness(S, "y*x'", act, "t*y^2/2", "t")),
                           ("extension", g4_extension)], tags=frozenset({"groups", "dim4"})))

    # dim-5 H of the dim-6 examples, both coframes
    H5 = h5_law()
    first = _forms(H5.coords, {"alpha": "dx", "beta": "dy", "gamma": "x*dx-dz", "delta": "dt-y*dx",
                               "eta": "dw-y*dz+(x*y-t)*dx"})
    m = pf.GroupModel(H5, first, ["alpha", "beta", "gamma", "delta", "eta"], pf.LatticeSpec((1, 1, 1, 1, 1)),
                      label="H (dim 5), first coframe")
    out.append(GroupEntry("group:H5-first", "dim-5 H, first coframe", m, "h5-first", algebras["h5-first"].algebra,
                          tags=frozenset({"groups", "dim6"})))
    second = _forms(H5.coords, {"alpha": "dx", "beta": "dy", "gamma": "dz-x*dx", "delta": "dt-y*dx",
                                "theta": "dw-y*dz+(x*y-t)*dx"})
    phi_s = pf.PolyMap.of(H5.coords, PHI_S5)
    m = pf.GroupModel(H5, second, ["alpha", "beta", "gamma", "delta", "theta"], pf.LatticeSpec((6, 2, 1, 1, 1)),
                      {"phi_s": (phi_s, "s")}, {"phi_s": ["theta"]}, "H (dim 5), second coframe")
    out.append(GroupEntry("group:H5-second", "dim-5 H with phi_s", m, "h5-second", algebras["h5-second"].algebra,
                          tags=frozenset({"groups", "dim6"})))

    # dim-6 G = H x_phi R
    G6 = g6_law()
    forms = _forms(G6.coords, {"omega": "ds", "alpha": "dx", "beta": "dy-s*dx", "gamma": "dz-s*dy+(s^2/2-x)*dx",
                               "delta": "dt-s*dz+s^2/2*dy+(x*s-y-s^3/6)*dx", "eta": "dw-y*dz-(t-x*y)*dx"})
    m = pf.GroupModel(G6, forms, ["omega", "alpha", "beta", "gamma", "delta", "eta"],
                      pf.LatticeSpec((6, 2, 1, 1, 1, 1)), label="G (dim 6)")
    S4 = _law(("x", "y", "z", "t"), ["x+x'", "y+y'", "z+z'+x*x'", "t+t'+y*x'"], "S (dim 4)")
    phi4 = "y*z'+t*x'"
    act4 = pf.PolyMap.of(S4.coords, PHI_S5[:4])
    chi6 = "s*(x*z+y^2/2-x^3/3)+s^2*x*y+s^3*x^2/3"

    def g6_assembly():
        built = pf.semidirect_group_law(H5, phi_s, "s")
        Hc = pf.central_group_law(S4, phi4, "w")
        lift = pf.PolyMap.of(Hc.coords, ["w+" + chi6] + [str(c) for c in act4.components])
        ext = pf.semidirect_group_law(Hc, lift, "s").permuted(G6.coords)
        lam = pf.LatticeSpec((6, 2, 1, 1))
        return [pf.CheckResult("semidirect_product", pf.same_law(built, G6)),
                pf.CheckResult("central_extension", pf.same_law(Hc.permuted(H5.coords), H5)),
                pf.CheckResult("lcs_extension_law", pf.same_law(ext, G6)),
                pf.verify_group_law(S4), pf.verify_cocycle(S4, phi4),
                pf.verify_lattice_subgroup(S4, lam),
                pf.verify_cocycle_lattice(S4, phi4, lam, 2),
                pf.verify_lattice_subgroup(G6, pf.LatticeSpec((6, 2, 1, 1, 2, 1))),
                pf.verify_homomorphism(S4, act4),
                pf.verify_one_parameter(act4, "s")]

    S1 = _law("xz", ["x+x'", "z+z'"], "R^2 (x, z)")

    def double_witness():
        return pf.verify_double_chi_identities(S1, "0", pf.PolyMap.of(S1.coords, ["x", "z"]), "t*x",
                                               [[0, 1], [-1, 0]], [0, 1])

    out.append(GroupEntry("group:G6", "dim-6 nilmanifold group", m, "L622-coframe", algebras["L622-coframe"].algebra,
                          [("assembly", g6_assembly), ("chi", _chi_witness(S4, phi4, act4, chi6, "s")),
                           ("double", double_witness)], tags=frozenset({"groups", "dim6"})))

    # H_{2n-1} for n = 3, 4
    for n in (3, 4):
        law = h2n1_law(n)
        forms = h2n1_forms(n)
        order = []
        for i in range(1, n):
            order += [f"alpha{i}", f"beta{i}"]
        order.append("eta")
        m = pf.GroupModel(law, forms, order, pf.LatticeSpec(tuple([1] * law.dim)), label=law.label)
        Sn = s2n2_law(n)
        phi = s2n2_cocycle(n)

        def central(S=Sn, phi=phi, law=law):
            built = pf.central_group_law(S, phi, "w").permuted(law.coords)
            return [pf.verify_group_law(S), pf.verify_cocycle(S, phi),
                    pf.verify_cocycle_lattice(S, phi, pf.LatticeSpec(tuple([1] * S.dim)), 1),
                    pf.CheckResult("central_extension", pf.same_law(built, law))]

        key = f"h{2 * n - 1}"
        out.append(GroupEntry(f"group:H{2 * n - 1}", f"H_{2 * n - 1}", m, key, algebras[key].algebra,
                              [("central", central)], tags=frozenset({"groups", "families"})))
    return out


@lru_cache(maxsize=1)
def _load() -> tuple:
    entries = _misc_entries() + _table1_entries() + _family_entries()
    by_key = {e.key: e for e in entries}
    groups = _group_entries(by_key)
    return tuple(entries), tuple(groups)


def load_catalog() -> list[CatalogEntry]:
    return list(_load()[0])


def load_groups() -> list[GroupEntry]:
    return list(_load()[1])


def get_entry(key: str) -> CatalogEntry:
    for e in load_catalog():
        if e.key == key or e.label == key or key in e.names.values():
            return e
    raise KeyError(key)


def get_group(key: str) -> GroupEntry:
    if not key.startswith("group:"):
        key = "group:" + key
    for g in load_groups():
        if g.key == key:
            return g
    raise KeyError(key)


def select(scope: str) -> list[CatalogEntry]:
    """Entries matching a comma list of tags, keys or ``dim=N``; 'all' selects everything, '' nothing."""
    parts = [p.strip() for p in scope.split(",") if p.strip()]
    if not parts:
        return []
    dims = {int(p[4:]) for p in parts if p.startswith("dim=") and p[4:].isascii() and p[4:].isdigit()}
    out = []
    for e in load_catalog():
        if "all" in parts or e.key in parts or e.dim in dims or any(p in e.tags for p in parts):
            out.append(e)
    return out


def select_groups(scope: str) -> list[GroupEntry]:
    parts = [p.strip() for p in scope.split(",") if p.strip()]
    return [g for g in load_groups()
            if "all" in parts or g.key in parts or g.key[6:] in parts or any(p in g.tags for p in parts)]


__all__ = [
    "PAPER", "DERIVED", "TRIVIAL", "Expectation", "CatalogEntry", "GroupEntry", "TABLE1",
    "load_catalog", "load_groups", "get_entry", "get_group", "select", "select_groups",
    "heis_plus_r", "h_family", "g2n_complex_structure",
]
