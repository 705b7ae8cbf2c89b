"""Command-line front end.

Every input is one JSON object with a "kind" field.  Exit status: 0 when all
checks pass, 1 when a check fails, 2 on unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import cat, logic, mvn, system as sysm, varbasis as vb
from .fuzzyset import FuzzySubset, alpha_cut, fuzzy_alpha_cut, strict_alpha_cut
from .lattice import FiniteFrame, GradedFrame, check_frame, check_graded_frame
from .report import Report
from .space import FuzzyTopSpace, check_space
from .truth import ValueChain, fmt, make_chain, tv

DEFAULT_SEED = 20240101


class InputError(Exception):
    pass


# ---- loading ------------------------------------------------------------------------

def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError(f"{path}: expected a JSON object with a \"kind\" field")
    data["_base"] = str(Path(path).parent)
    return data


def _ref(d, key, base):
    v = d[key]
    if isinstance(v, str):
        sub = read_json(Path(base) / v)
        return sub
    v = dict(v)
    v.setdefault("_base", base)
    return v


def _chain(v):
    if v is None:
        return None
    if isinstance(v, int):
        return make_chain(v)
    return ValueChain(tv(x) for x in v)


def _vec(carrier, v):
    if isinstance(v, dict):
        return FuzzySubset(carrier, {x: v[str(x)] for x in carrier})
    return FuzzySubset(carrier, v)


def load_frame(d) -> FiniteFrame:
    els = [str(e) for e in d["elements"]]
    F = FiniteFrame.from_covers(els, [(str(a), str(b)) for a, b in d.get("covers", [])])
    return F


def load_space(d) -> FuzzyTopSpace:
    carrier = tuple(str(x) for x in d["carrier"])
    opens = d["opens"]
    if isinstance(opens, dict):
        opens = list(opens.values())
    top = _vec(carrier, d["top"]) if "top" in d else None
    chain = _chain(d.get("chain"))
    return FuzzyTopSpace(carrier, [_vec(carrier, v) for v in opens], flavor=d.get("flavor", "plain"),
                         chain=chain, top=top)


def load_system(d):
    base = d.get("_base", ".")
    F = load_frame(_ref(d, "frame", base))
    kind = d["kind"]
    if kind == "graded-system":
        return sysm.GradedFuzzyTopSystem(d["points"], GradedFrame(F, [[tv(v) for v in row] for row in d["R"]]),
                                         d["sat"])
    if kind == "l-system":
        pts = [str(p) for p in d["points"]]
        memb = FuzzySubset(pts, [tv(v) for v in d["membership"]])
        return vb.LTopSystem(pts, memb, F, d["sat"], _chain(d["chain"]))
    return sysm.FuzzyTopSystem([str(p) for p in d["points"]], F, d["sat"])


def load_algebra(d) -> mvn.LnAlgebra:
    n = int(d["n"])
    rep = d.get("representation", "chain")
    if rep == "chain":
        return mvn.chain_algebra(n)
    if rep != "functions":
        raise InputError(f"unknown representation {rep!r}")
    X = tuple(str(x) for x in d["X"])
    if "elements" in d:
        vecs = [tuple(tv(v) for v in e) for e in d["elements"]]
        if set(vecs) == set(mvn.close_vectors(n, X, vecs)):
            return mvn.algebra_from_vectors(n, X, vecs)
        raise InputError("listed elements are not closed under the operations")
    return mvn.function_algebra(n, X, [tuple(tv(v) for v in g) for g in d.get("generators", [])])


def load_fbsys(d) -> mvn.FBSys:
    base = d.get("_base", ".")
    A = load_algebra(_ref(d, "algebra", base))
    if "sat" not in d:
        return mvn.evaluation_system(A, d.get("points"))
    return mvn.FBSys([str(p) for p in d["points"]], A, [[tv(v) for v in row] for row in d["sat"]])


def _key(s):
    return () if s == "" else tuple(str(s).split(","))


def load_theory(d):
    """Returns (interpretation, [(sequent, grade)], constant names)."""
    I = logic.Interpretation(
        [str(x) for x in d["domain"]],
        {k: str(v) for k, v in d.get("constants", {}).items()},
        {k: {_key(a): str(v) for a, v in t.items()} for k, t in d.get("functions", {}).items()},
        {k: {_key(a): tv(v) for a, v in t.items()} for k, t in d.get("predicates", {}).items()},
    )
    consts = set(I.constants)
    seqs = []
    for s in d.get("sequents", []):
        seq, g = logic.parse_sequent(s, consts)
        seqs.append((seq, g if g is not None else tv(1)))
    return I, seqs, consts


def load_fuzzyset(d) -> FuzzySubset:
    carrier = tuple(str(x) for x in d["carrier"])
    return _vec(carrier, d["membership"])


LOADERS = {
    "frame": load_frame,
    "space": load_space,
    "system": load_system,
    "graded-system": load_system,
    "l-system": load_system,
    "mvn-algebra": load_algebra,
    "fbsys": load_fbsys,
    "theory": load_theory,
    "fuzzyset": load_fuzzyset,
}


def load(path, kinds=None):
    d = read_json(path)
    kind = d["kind"]
    if kinds and kind not in kinds:
        raise InputError(f"{path}: expected kind {' or '.join(kinds)}, got {kind!r}")
    if kind not in LOADERS:
        raise InputError(f"{path}: unknown kind {kind!r}")
    try:
        return kind, LOADERS[kind](d)
    except InputError:
        raise
    except logic.ParseError as e:
        raise InputError(f"{path}: parse error at column {e.pos}: {e}") from None
    except (KeyError, ValueError, TypeError, IndexError, ZeroDivisionError) as e:
        raise InputError(f"{path}: {type(e).__name__}: {e}") from None


# ---- output -----------------------------------------------------------------------

def emit_report(r: Report, args) -> int:
    if args.json:
        print(json.dumps(r.to_dict(), indent=2))
    else:
        print(r.summary())
        for n in r.notes:
            print("  note:", n)
    return 0 if r.ok else 1


def emit_object(obj, args) -> int:
    text = json.dumps(obj, indent=2)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return 0


# ---- verbs --------------------------------------------------------------------------

def cmd_check(args):
    kind, obj = load(args.file)
    if kind == "frame":
        r = check_frame(obj)
    elif kind == "space":
        r = check_space(obj)
    elif kind == "system":
        r = sysm.check_system_full(obj)
    elif kind == "graded-system":
        r = sysm.check_graded_system(obj)
    elif kind == "l-system":
        r = vb.check_L_system(obj)
    elif kind == "mvn-algebra":
        r = mvn.check_lnc(obj)
    elif kind == "fbsys":
        r = mvn.check_fbsys(obj)
    elif kind == "theory":
        r = obj[0].check()
    else:
        raise InputError(f"nothing to check for kind {kind!r}")
    return emit_report(r, args)


def cmd_ext(args):
    kind, D = load(args.file, ("system", "graded-system", "l-system", "fbsys"))
    if kind == "graded-system":
        S = sysm.ext_g(D)
    elif kind == "l-system":
        S = vb.ext_L(D)
    elif kind == "fbsys":
        S = mvn.ext_B(D)
    else:
        S = sysm.ext(D)
    return emit_object(S.to_json(), args)


def cmd_j(args):
    _, S = load(args.file, ("space",))
    if args.graded:
        D = sysm.j_g(S)
    elif S.flavor == "n-valued":
        D = mvn.j_B(S)
    elif S.top != FuzzySubset(S.carrier, [1] * len(S.carrier)):
        D = vb.j_L(S)
    else:
        D = sysm.j(S)
    return emit_object(D.to_json(), args)


def cmd_quotient(args):
    _, D = load(args.file, ("system", "graded-system"))
    Q, _ = sysm.quotient(D)
    return emit_object(Q.to_json(), args)


def cmd_sum(args):
    Ds = [load(f, ("system",))[1] for f in args.files]
    return emit_object(sysm.system_sum(Ds).to_json(), args)


def cmd_product(args):
    D = load(args.first, ("system",))[1]
    E = load(args.second, ("system",))[1]
    P, _ = sysm.system_product(D, E)
    return emit_object(P.to_json(), args)


def _parse_chain_arg(text):
    if text is None:
        return None
    if "," in text:
        return ValueChain(tv(v) for v in text.split(","))
    return make_chain(int(text))


def cmd_spectrum(args):
    kind, obj = load(args.file, ("frame", "system", "graded-system"))
    chain = _parse_chain_arg(args.chain)
    if kind == "frame":
        A = obj
        chain = chain or make_chain(2)
    else:
        A = obj.frame
        chain = chain or sysm.occurring_chain(obj)
    if kind == "graded-system":
        return emit_object(sysm.s_g(obj.gframe, chain).to_json(), args)
    return emit_object(sysm.s(A, chain).to_json(), args)


def cmd_grade(args):
    _, (I, _, consts) = load(args.theory, ("theory",))
    try:
        seq, _ = logic.parse_sequent(args.sequent, consts)
    except logic.ParseError as e:
        raise InputError(f"sequent: parse error at column {e.pos}: {e}") from None
    g = logic.sequent_grade(seq.lhs, seq.rhs, I)
    if args.json:
        print(json.dumps({"sequent": str(seq), "grade": fmt(g)}))
    else:
        print(fmt(g))
    return 0


def cmd_derive(args):
    _, (I, prem, consts) = load(args.theory, ("theory",))
    d = read_json(args.proof)
    if d["kind"] != "derivation":
        raise InputError(f"{args.proof}: expected kind 'derivation'")
    if "premises" in d:
        prem = [logic.parse_sequent(s, consts) for s in d["premises"]]
        prem = [(s, g if g is not None else tv(1)) for s, g in prem]
    r = logic.check_derivation(prem, d["tree"], I, consts)
    if r.value is not None and not args.json:
        print(f"conclusion: {r.conclusion}")
        print(f"bound: {fmt(r.value)}")
    return emit_report(r, args)


def _alpha(text):
    try:
        return tv(text)
    except ValueError as e:
        raise InputError(f"--alpha: {e}") from None


def cmd_alpha(args):
    kind, obj = load(args.file, ("fuzzyset", "space", "l-system"))
    a = _alpha(args.alpha)
    if kind == "fuzzyset":
        if args.fuzzy:
            return emit_object({"kind": "fuzzyset", **fuzzy_alpha_cut(obj, a).to_json()}, args)
        cut = strict_alpha_cut(obj, a) if args.strict else alpha_cut(obj, a)
        return emit_object({"kind": "crisp-set", "elements": sorted(str(x) for x in cut)}, args)
    if kind == "space":
        return emit_object(vb.alpha_subspace(obj, a, fuzzy=args.fuzzy).to_json(), args)
    D = vb.alpha_subsystem_fuzzy(obj, a) if args.fuzzy else vb.alpha_subsystem_strict(obj, a)
    return emit_object(D.to_json(), args)


def cmd_export_dot(args):
    kind, obj = load(args.file, ("frame", "system", "graded-system", "l-system"))
    F = obj if kind == "frame" else obj.frame
    print(F.to_dot(args.name))
    return 0


def _algebra_arg(args):
    if args.file is None:
        if args.n is None:
            raise InputError("give an algebra file or --n")
        return mvn.chain_algebra(args.n)
    kind, obj = load(args.file, ("mvn-algebra", "fbsys"))
    return obj if kind == "mvn-algebra" else obj.algebra


def cmd_mvn(args):
    if args.sub == "check":
        A = _algebra_arg(args)
        r = mvn.check_lnc(A)
        if A.vecs is not None:
            r.extend(mvn.check_prop_terms(A), "terms ")
        return emit_report(r, args)
    if args.sub == "primes":
        A = _algebra_arg(args)
        r = mvn.bijection_check(A)
        primes = mvn.prime_filters(A)
        r.value = [sorted(A.name(i) for i in P) for P in primes]
        if not args.json:
            for P in primes:
                print("{" + ", ".join(sorted(A.name(i) for i in P)) + "}")
        return emit_report(r, args)
    if args.sub == "spec":
        return emit_object(mvn.s_B(_algebra_arg(args)).to_json(), args)
    # dual
    kind, obj = load(args.file, ("fbsys", "mvn-algebra"))
    D = obj if kind == "fbsys" else mvn.evaluation_system(obj)
    r = cat.check_equivalence("boolean-system", [D])
    r.extend(cat.check_equivalence("boolean-space", [mvn.ext_B(D)]), "ext_B ")
    return emit_report(r, args)


# ---- laws ---------------------------------------------------------------------------

def _suite_systems(rng, k):
    r = Report("systems")
    for _ in range(k):
        D = cat.random_system(rng)
        r.extend(sysm.check_system_full(D))
    return r


def _suite_ext(rng, k):
    Ds = [cat.random_system(rng) for _ in range(k)]
    Ss = [cat.random_space(rng) for _ in range(k)]
    maps = [cat.random_continuous_map(rng) for _ in range(k)]
    return cat.check_adjunction_j_ext(Ds, Ss, maps)


def _suite_fm(rng, k):
    Ds = [cat.random_system(rng, max_frame=6) for _ in range(k)]
    Bs = [cat.random_frame(rng, 5) for _ in range(2)]
    return cat.check_adjunction_fm_s(Ds, Bs)


def _suite_spatial(rng, k):
    return cat.check_equivalence("spatial", [sysm.quotient(cat.random_system(rng))[0] for _ in range(k)])


def _suite_space(rng, k):
    return cat.check_equivalence("space", [cat.random_space(rng) for _ in range(k)])


def _suite_localic(rng, k):
    Ds = [cat.random_system(rng) for _ in range(k)]
    return cat.check_equivalence("localic", [D for D in Ds if sysm.is_localic(D)])


def _suite_boolean(rng, k):
    Ds = [cat.random_valid_fbsys(rng) for _ in range(k)]
    r = cat.check_equivalence("boolean-system", Ds)
    r.extend(cat.check_adjunction_j_b_ext_b(Ds))
    return r


def _suite_lag(rng, k):
    Ds = [cat.random_fbsys(rng) for _ in range(k)]
    return cat.check_adjunction_lag_s_b(Ds, [mvn.chain_algebra(2), mvn.chain_algebra(3)])


def _suite_fuzz(rng, k):
    Ls = [cat.random_l_space(rng) for _ in range(k)]
    r = cat.check_adjunction_l([vb.j_L(S) for S in Ls])
    r.extend(cat.check_adjunction_fuzz([vb.j_F(S) for S in Ls]))
    return r


def _suite_functors(rng, k):
    maps = [cat.random_continuous_map(rng) for _ in range(k)]
    r = cat.check_functor_laws(cat.J, [S1 for _, S1, _ in maps], maps)
    mors = [(sysm.j_morphism(f, S1, S2), sysm.j(S1), sysm.j(S2)) for f, S1, S2 in maps]
    r.extend(cat.check_functor_laws(cat.EXT, [D for _, D, _ in mors], mors))
    r.extend(cat.check_functor_laws(cat.FM, [D for _, D, _ in mors], mors))
    return r


SUITES = {
    "systems": _suite_systems,
    "ext": _suite_ext,
    "fm": _suite_fm,
    "spatial": _suite_spatial,
    "space": _suite_space,
    "localic": _suite_localic,
    "boolean": _suite_boolean,
    "lag": _suite_lag,
    "fuzz": _suite_fuzz,
    "functors": _suite_functors,
}


def cmd_laws(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    total = Report(f"laws (seed {args.seed})")
    for name in names:
        rng = random.Random(f"{args.seed}:{name}")
        r = SUITES[name](rng, args.instances)
        total.extend(r, f"{name}: ")
        if not args.json:
            print(f"{name}: {'PASS' if r.ok else 'FAIL'}")
    if args.json:
        print(json.dumps(total.to_dict(), indent=2))
        return 0 if total.ok else 1
    if not total.ok:
        print(total.summary())
    return 0 if total.ok else 1


# ---- entry point --------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="fuzzytop", description="Check and build finite fuzzy topological structures.")
    p.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, help):
        q = sub.add_parser(name, help=help)
        q.set_defaults(fn=fn)
        q.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return q

    q = add("check", cmd_check, "validate an object against its axioms")
    q.add_argument("file")
    for name, fn, h in (("ext", cmd_ext, "system to space"), ("j", cmd_j, "space to system"),
                        ("quotient", cmd_quotient, "spatial quotient of a system")):
        q = add(name, fn, h)
        q.add_argument("file")
        q.add_argument("-o", "--output")
        if name == "j":
            q.add_argument("--graded", action="store_true")
    q = add("sum", cmd_sum, "sum of systems")
    q.add_argument("files", nargs="+")
    q.add_argument("-o", "--output")
    q = add("product", cmd_product, "product of two systems")
    q.add_argument("first")
    q.add_argument("second")
    q.add_argument("-o", "--output")
    q = add("spectrum", cmd_spectrum, "system of frame homs into a chain")
    q.add_argument("file")
    q.add_argument("--chain", help="n for the n-element chain, or comma-separated values")
    q.add_argument("-o", "--output")
    q = add("grade", cmd_grade, "grade of a sequent in a theory's interpretation")
    q.add_argument("theory")
    q.add_argument("sequent")
    q = add("derive", cmd_derive, "check a derivation and its bound")
    q.add_argument("theory")
    q.add_argument("proof")
    q = add("laws", cmd_laws, "randomized law suites")
    q.add_argument("--suite", default="all", choices=["all", *SUITES])
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--instances", type=int, default=20)
    q = add("mvn", cmd_mvn, "n-valued algebra tools")
    q.add_argument("sub", choices=["check", "primes", "spec", "dual"])
    q.add_argument("file", nargs="?")
    q.add_argument("--n", type=int)
    q.add_argument("-o", "--output")
    q = add("alpha", cmd_alpha, "alpha-cuts of fuzzy sets, spaces and L-systems")
    q.add_argument("file")
    q.add_argument("--alpha", required=True)
    g = q.add_mutually_exclusive_group()
    g.add_argument("--strict", action="store_true")
    g.add_argument("--fuzzy", action="store_true")
    q.add_argument("-o", "--output")
    q = add("export-dot", cmd_export_dot, "Hasse diagram in DOT")
    q.add_argument("file")
    q.add_argument("--name", default="poset")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except mvn.ClosureError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
