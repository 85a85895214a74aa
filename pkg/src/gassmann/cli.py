"""Command-line entry point.

Exit codes: 0 positive verdict, 1 negative verdict, 2 input error,
3 size or closure bound exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import exact
from .complex import (
    GComplex, HomologyBasis, exact_sparse_product, homology, join_complex, quotient, sparse_equal,
    transplant_chains, transplant_homology,
)
from .equivalence import (
    almost_conjugate, character_inner_product, conjugate_subgroups, permutation_character,
    representation_equivalent,
)
from .errors import BoundExceeded, GassmannError, InputError, NotEquivalent, NotFree, SizeBound
from .groups import DEFAULT_CLOSURE_BOUND, FiniteGroup, Subgroup, conjugacy_class_representatives, subgroups
from .io import format_matrix, parse_complex, parse_matrices, read_group
from .isogeny import ComplexTorusData, IntegerMatrixMap, lattice_isogeny_check, torus_isogeny_check
from .spectra import certify_isospectral
from .transplant import expected_intertwiner_dimension, intertwiner_space, transplantation_pair

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3
SEARCH_MAX_ORDER = 400


class _Tagged(Exception):
    def __init__(self, tag, err):
        super().__init__(f"[{tag}] {err}")
        self.tag = tag
        self.err = err


@contextmanager
def stage(tag: str):
    try:
        yield
    except _Tagged:
        raise
    except (GassmannError, ValueError, OSError) as e:
        raise _Tagged(tag, e) from e


def yn(b) -> str:
    return "yes" if b else "no"


class Report:
    def __init__(self):
        self.lines: list[str] = []

    def __call__(self, *parts):
        self.lines.append(" ".join(str(p) for p in parts))

    def section(self, name):
        if self.lines:
            self.lines.append("")
        self.lines.append(f"== {name} ==")

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


# ---- shared loaders ------------------------------------------------------

def _load_pair(args):
    with stage("group-core"):
        gf = read_group(args.group, bound=args.bound)
        return gf.group, gf.subgroup(args.sub1), gf.subgroup(args.sub2)


def _load_complex(args, G: FiniteGroup) -> tuple[GComplex, str]:
    with stage("gcomplex"):
        if getattr(args, "complex", None):
            parsed = parse_complex(Path(args.complex).read_text(), n_generators=len(G.generators))
            X = GComplex(G, parsed.simplices, parsed.action, budget=args.budget)
            return X, f"complex file {Path(args.complex).name}"
        return join_complex(G, args.copies, budget=args.budget), f"join of {args.copies} copies of G"


def _perm_name(G: FiniteGroup, x: int) -> str:
    return str(G.element(x))


def _subgroup_line(name: str, H: Subgroup) -> str:
    return f"{name}: order {H.order}, index {H.index}"


# ---- report pieces -------------------------------------------------------

def _gassmann_section(rep: Report, G, H1, H2, names) -> tuple[bool, bool, bool]:
    rep(f"group order: {G.order}, degree {G.degree}, classes {len(G.conjugacy_classes)}")
    rep(_subgroup_line(names[0], H1))
    rep(_subgroup_line(names[1], H2))
    ac, prof = almost_conjugate(G, H1, H2)
    rep("class table (representative, size, |C n G1|, |C n G2|):")
    for row in prof.rows:
        mark = "" if row.count1 == row.count2 else "  *"
        rep(f"  {_perm_name(G, row.representative)}  {row.size}  {row.count1}  {row.count2}{mark}")
    conj, g = conjugate_subgroups(G, H1, H2)
    req = representation_equivalent(G, H1, H2)
    if ac != req:
        raise AssertionError("almost conjugacy and representation equivalence disagree")
    rep(f"ALMOST-CONJUGATE: {yn(ac)}, CONJUGATE: {yn(conj)}")
    if conj:
        rep(f"conjugating element: {_perm_name(G, g)}")
    rep(f"REPRESENTATION-EQUIVALENT: {yn(req)}")
    return ac, conj, req


def _characters(rep: Report, G, H1, H2, names):
    chi1, chi2 = permutation_character(G, H1), permutation_character(G, H2)
    rep(f"permutation character {names[0]}: {' '.join(map(str, chi1))}")
    rep(f"permutation character {names[1]}: {' '.join(map(str, chi2))}")
    rep(f"<chi1, chi2> = {character_inner_product(G, chi1, chi2)}")


def _pair_section(rep: Report, G, H1, H2, seed):
    basis = intertwiner_space(G, H1, H2)
    rep(f"intertwiner dimension: {len(basis)} (character inner product {expected_intertwiner_dimension(G, H1, H2)})")
    pair = transplantation_pair(G, H1, H2, seed=seed)
    rep(f"n: {pair.n}")
    rep(format_matrix(pair.tau, "tau").rstrip())
    rep(format_matrix(pair.sigma, "sigma").rstrip())
    rep(f"tau M1(g) = M2(g) tau for all {G.order} elements: {yn(pair.equivariance_residual() == 0)}")
    ok = pair.check()
    rep(f"sigma tau = n Id and tau sigma = n Id: {yn(ok)}")
    return pair, ok


def _homology_table(rep: Report, label, Q):
    rep(f"{label}: simplices per dimension {' '.join(str(Q.count(q)) for q in range(Q.dim + 1))}, "
        f"Euler characteristic {Q.euler_characteristic()}")
    rep("  q  betti  torsion")
    groups = []
    for q in range(Q.dim + 1):
        h = homology(Q, q)
        if h.rank_in + h.rank_out + h.betti != Q.count(q):
            raise AssertionError("rank-nullity failure")
        groups.append(h)
        rep(f"  {q}  {h.betti}  {' '.join(map(str, h.torsion)) or '-'}")
    return groups


def _chain_checks(rep: Report, pair, X, Q1, Q2, degrees):
    ok = True
    for q in degrees:
        T = transplant_chains(pair, X, q, Q1, Q2)
        S = transplant_chains(pair.reversed(), X, q, Q2, Q1)
        ident = pair.n * sparse_identity(Q1.count(q))
        st = sparse_equal(exact_sparse_product(S, T), ident)
        comm = True
        if q > 0:
            Tm = transplant_chains(pair, X, q - 1, Q1, Q2)
            comm = sparse_equal(exact_sparse_product(Tm, Q1.boundary(q)), exact_sparse_product(Q2.boundary(q), T))
        rep(f"  degree {q}: tau# d = d tau#: {yn(comm)}, sigma# tau# = n Id: {yn(st)}, nonzeros {T.nnz}")
        ok = ok and st and comm
    return ok


def sparse_identity(n):
    import scipy.sparse as sp
    return sp.identity(n, dtype=np.int64, format="csr")


def _digest(coeffs) -> str:
    return hashlib.sha256(",".join(map(str, coeffs)).encode()).hexdigest()[:16]


# ---- subcommands ---------------------------------------------------------

def cmd_gassmann(args, rep: Report) -> int:
    G, H1, H2 = _load_pair(args)
    with stage("gassmann"):
        ac, _, _ = _gassmann_section(rep, G, H1, H2, (args.sub1, args.sub2))
    return EXIT_OK if ac else EXIT_NEGATIVE


def cmd_intertwine(args, rep: Report) -> int:
    G, H1, H2 = _load_pair(args)
    with stage("transplant"):
        try:
            _, ok = _pair_section(rep, G, H1, H2, args.seed)
        except NotEquivalent as e:
            rep(f"no invertible intertwiner: {e}")
            return EXIT_NEGATIVE
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_homology(args, rep: Report) -> int:
    with stage("group-core"):
        gf = read_group(args.group, bound=args.bound)
        G = gf.group
        subs = [(name, gf.subgroup(name)) for name in args.subgroups]
    X, desc = _load_complex(args, G)
    rep(f"complex: {desc}; simplices per dimension {' '.join(str(X.count(q)) for q in range(X.dim + 1))}")
    with stage("gcomplex"):
        tables = []
        for name, H in subs:
            tables.append(_homology_table(rep, f"quotient by {name}", quotient(X, H)))
    if len(tables) > 1:
        same = all([h.betti for h in t] == [h.betti for h in tables[0]] for t in tables)
        rep(f"Betti numbers agree: {yn(same)}")
        return EXIT_OK if same else EXIT_NEGATIVE
    return EXIT_OK


def cmd_transplant_chains(args, rep: Report) -> int:
    G, H1, H2 = _load_pair(args)
    with stage("transplant"):
        pair = transplantation_pair(G, H1, H2, seed=args.seed)
    X, desc = _load_complex(args, G)
    with stage("gcomplex"):
        Q1, Q2 = quotient(X, H1), quotient(X, H2)
        rep(f"complex: {desc}; n = {pair.n}")
        ok = _chain_checks(rep, pair, X, Q1, Q2, [args.degree])
        T = transplant_chains(pair, X, args.degree, Q1, Q2)
        S = transplant_chains(pair.reversed(), X, args.degree, Q2, Q1)
        rep(format_matrix(T.toarray(), f"tau# on C_{args.degree}").rstrip())
        rep(format_matrix(S.toarray(), f"sigma# on C_{args.degree}").rstrip())
    return EXIT_OK if ok else EXIT_NEGATIVE


def _read_torus(path) -> ComplexTorusData:
    mats = parse_matrices(Path(path).read_text())
    if not mats:
        raise InputError(f"{path}: no matrix")
    return ComplexTorusData(mats[0][1])


def cmd_isogeny(args, rep: Report) -> int:
    with stage("isogeny"):
        mats = parse_matrices(Path(args.matrix).read_text())
        if not mats:
            raise InputError(f"{args.matrix}: no matrix")
        A = IntegerMatrixMap(mats[0][1])
        if args.torus:
            cert = torus_isogeny_check(A, _read_torus(args.torus[0]), _read_torus(args.torus[1]), degree=args.degree)
        else:
            cert = lattice_isogeny_check(A, degree=args.degree)
    rep(cert.report())
    return EXIT_OK if cert.isogeny else EXIT_NEGATIVE


def _spectral_lines(rep: Report, cert, full: bool):
    for label, poly in (("G1", cert.poly1), ("G2", cert.poly2)):
        if full:
            rep(f"charpoly {label}: {poly}")
        else:
            rep(f"charpoly {label}: degree {poly.degree}, kernel dimension {poly.kernel_dimension()}, "
                f"sha256 {_digest(poly.coefficients)}")
    rep(f"characteristic polynomials equal: {yn(cert.isospectral)}")
    if cert.residual_zero is None:
        rep("intertwining residual: no intertwiner (subgroups are not almost conjugate)")
    elif cert.residual_zero:
        rep("intertwining residual tau# L2 - L1 tau#: 0")
    else:
        r, c, v = cert.first_nonzero
        rep(f"intertwining residual tau# L2 - L1 tau#: nonzero, first entry ({r}, {c}) = {v}")
    rep(f"ISOSPECTRAL: {yn(bool(cert))}")


def cmd_spectra(args, rep: Report) -> int:
    G, H1, H2 = _load_pair(args)
    with stage("transplant"):
        try:
            pair = transplantation_pair(G, H1, H2, seed=args.seed)
        except NotEquivalent:
            pair = None
    X, desc = _load_complex(args, G)
    with stage("spectra"):
        rep(f"complex: {desc}; degree {args.degree}")
        cert = certify_isospectral(X, H1, H2, pair, args.degree)
        _spectral_lines(rep, cert, full=True)
    return EXIT_OK if cert else EXIT_NEGATIVE


def cmd_pipeline(args, rep: Report) -> int:
    G, H1, H2 = _load_pair(args)
    names = (args.sub1, args.sub2)
    rep.section("gassmann")
    with stage("gassmann"):
        ac, _, _ = _gassmann_section(rep, G, H1, H2, names)
        _characters(rep, G, H1, H2, names)
    if not ac:
        rep("pipeline stopped: the subgroups are not almost conjugate")
        return EXIT_NEGATIVE
    rep.section("transplant")
    with stage("transplant"):
        pair, pair_ok = _pair_section(rep, G, H1, H2, args.seed)
    X, desc = _load_complex(args, G)
    q = args.degree
    rep.section("gcomplex")
    with stage("gcomplex"):
        rep(f"complex: {desc}; simplices per dimension {' '.join(str(X.count(k)) for k in range(X.dim + 1))}")
        Q1, Q2 = quotient(X, H1), quotient(X, H2)
        h1 = _homology_table(rep, f"quotient by {names[0]}", Q1)
        h2 = _homology_table(rep, f"quotient by {names[1]}", Q2)
        betti_ok = [h.betti for h in h1] == [h.betti for h in h2]
        rep(f"Betti numbers agree: {yn(betti_ok)}")
        euler_ok = Q1.euler_characteristic() == Q2.euler_characteristic()
        rep(f"Euler characteristics agree: {yn(euler_ok)}")
        rep("chain transplantation:")
        chains_ok = _chain_checks(rep, pair, X, Q1, Q2, range(X.dim + 1))
        if q > X.dim:
            raise InputError(f"degree {q} exceeds the complex dimension {X.dim}")
        if h1[q].betti:
            bases = HomologyBasis(Q1, q), HomologyBasis(Q2, q)
            F = transplant_homology(pair, X, q, Q1, Q2, bases=bases)
            B = transplant_homology(pair.reversed(), X, q, Q2, Q1, bases=bases[::-1])
        else:
            F = B = exact.zeros((0, 0))
        composite_ok = np.array_equal(exact.dot(B, F), pair.n * exact.identity(F.shape[0]))
        rep(f"transplanted map on H_{q} mod torsion: {F.shape[0]} x {F.shape[1]}, "
            f"sigma# tau# = n Id: {yn(composite_ok)}")
    rep.section("isogeny")
    with stage("isogeny"):
        A = IntegerMatrixMap(F.T.copy())  # cohomology lattices: dual map
        if args.torus:
            cert = torus_isogeny_check(A, _read_torus(args.torus[0]), _read_torus(args.torus[1]), degree=pair.n)
        else:
            cert = lattice_isogeny_check(A, degree=pair.n)
        rep(f"map: dual of the transplanted map on H_{q}, cohomology of the second quotient to the first")
        rep(cert.report())
    rep.section("spectra")
    with stage("spectra"):
        spec = certify_isospectral(X, H1, H2, pair, q, Q1, Q2)
        rep(f"Laplacian degree {q}, size {spec.poly1.degree}")
        _spectral_lines(rep, spec, full=spec.poly1.degree <= 16)
    verdict = pair_ok and betti_ok and euler_ok and chains_ok and composite_ok and cert.isogeny and bool(spec)
    if cert.divides_degree_power() is False:
        verdict = False
    rep.section("verdict")
    rep(f"ALL CHECKS PASS: {yn(verdict)}")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _describe_subgroup(G: FiniteGroup, H: Subgroup) -> str:
    gens = " ".join(_perm_name(G, g) for g in H.generators) or "()"
    return f"order {H.order}: {gens}"


def cmd_search(args, rep: Report) -> int:
    with stage("group-core"):
        gf = read_group(args.group, bound=args.bound)
        G = gf.group
    if G.order > SEARCH_MAX_ORDER:
        raise _Tagged("gassmann", SizeBound(f"group order {G.order} exceeds {SEARCH_MAX_ORDER} for search"))
    with stage("gassmann"):
        subs = conjugacy_class_representatives(G, subgroups(G, args.max_generators))
        if args.max_index:
            subs = [S for S in subs if S.index <= args.max_index]
        rep(f"group order {G.order}; {len(subs)} conjugacy classes of subgroups "
            f"generated by at most {args.max_generators} elements")
        found = 0
        for i, A in enumerate(subs):
            for B in subs[i + 1:]:
                if A.order != B.order or A.order in (1, G.order):
                    continue
                if almost_conjugate(G, A, B)[0]:
                    found += 1
                    rep(f"pair {found}: index {A.index}")
                    rep(f"  {_describe_subgroup(G, A)}")
                    rep(f"  {_describe_subgroup(G, B)}")
        rep(f"almost conjugate, non-conjugate pairs: {found}")
    return EXIT_OK if found else EXIT_NEGATIVE


# ---- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for the intertwiner search (default 0)")
    common.add_argument("--bound", type=int, default=DEFAULT_CLOSURE_BOUND, help="group closure bound")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    cx = argparse.ArgumentParser(add_help=False)
    cx.add_argument("--copies", type=int, default=2, help="number of copies in the join complex (default 2)")
    cx.add_argument("--complex", help="complex file to use instead of the join complex")
    cx.add_argument("--budget", type=int, default=10 ** 6, help="simplex budget per dimension")

    p = argparse.ArgumentParser(prog="gassmann", description="Gassmann pairs, transplantation and isogeny certificates")
    sub = p.add_subparsers(dest="command", required=True)

    def pair_cmd(name, help_, parents=(common,)):
        s = sub.add_parser(name, parents=list(parents), help=help_)
        s.add_argument("group", help="group file")
        s.add_argument("sub1", help="name of the first subgroup")
        s.add_argument("sub2", help="name of the second subgroup")
        return s

    pair_cmd("gassmann", "class-intersection certificate").set_defaults(func=cmd_gassmann)
    pair_cmd("intertwine", "integer intertwiners tau, sigma and n").set_defaults(func=cmd_intertwine)

    s = sub.add_parser("homology", parents=[common, cx], help="homology of quotient complexes")
    s.add_argument("group")
    s.add_argument("subgroups", nargs="+")
    s.set_defaults(func=cmd_homology)

    s = pair_cmd("transplant-chains", "chain-level transplantation matrices", (common, cx))
    s.add_argument("--degree", type=int, default=1, help="chain degree (default 1)")
    s.set_defaults(func=cmd_transplant_chains)

    s = sub.add_parser("isogeny", parents=[common], help="lattice or complex-torus isogeny certificate")
    s.add_argument("matrix", help="matrix file")
    s.add_argument("--torus", nargs=2, metavar=("J1", "J2"), help="complex structures of source and target")
    s.add_argument("--degree", type=int, help="degree n of a companion map, if known")
    s.set_defaults(func=cmd_isogeny)

    s = pair_cmd("spectra", "exact Laplacian isospectrality certificate", (common, cx))
    s.add_argument("--degree", type=int, default=0, help="Laplacian degree (default 0)")
    s.set_defaults(func=cmd_spectra)

    s = pair_cmd("pipeline", "full report", (common, cx))
    s.add_argument("--degree", type=int, default=1, help="homology and Laplacian degree (default 1)")
    s.add_argument("--torus", nargs=2, metavar=("J1", "J2"), help="complex structures for the isogeny step")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("search", parents=[common], help="find almost conjugate, non-conjugate subgroup pairs")
    s.add_argument("group")
    s.add_argument("--max-index", type=int, default=0, help="only subgroups of at most this index")
    s.add_argument("--max-generators", type=int, default=2, help="generator-count bound (default 2)")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report()
    try:
        code = args.func(args, rep)
    except _Tagged as t:
        err = t.err
        msg = f"error [{t.tag}]: {type(err).__name__}: {err}"
        if isinstance(err, NotFree) and err.simplex is not None:
            msg += f" (simplex {err.simplex})"
        print(msg, file=sys.stderr)
        if rep.lines:
            _emit(rep, args)
        return EXIT_BOUND if isinstance(err, BoundExceeded) else EXIT_INPUT if isinstance(err, (InputError, NotFree, ValueError, OSError)) else EXIT_NEGATIVE
    _emit(rep, args)
    return code


def _emit(rep: Report, args):
    text = rep.text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
