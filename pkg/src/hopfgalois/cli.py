"""Command-line driver exposing the toolkit's operations, property suites, and
certificates with deterministic, machine-parsable output."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import integral, transition
from .descent import (descend, is_generator, is_separable, verify_commuting,
                      verify_hopf_galois)
from .errors import FixtureValidationError, HopfGaloisError, TheoremViolationError
from .fixtures import BUNDLED, Fixture, bundled_path, parse
from .perm import (Permutation, centralizer_bruteforce, group_queries, opposite,
                   right_translation_subgroup)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

GENERATOR_SAMPLES = 200


class Report:
    """Accumulates per-check records; verdicts are PASS, FAIL, or UNKNOWN."""

    def __init__(self, command: list[str], fixture: str, seed: int):
        self.command = list(command)
        self.fixture = fixture
        self.seed = seed
        self.checks: list[dict] = []
        self.started = time.monotonic()

    def add(self, name: str, verdict: str, provenance: str, **details):
        assert verdict in ("PASS", "FAIL", "UNKNOWN")
        record = {"name": name, "verdict": verdict, "provenance": provenance}
        if details:
            record["details"] = details
        self.checks.append(record)

    def exit_code(self) -> int:
        verdicts = {c["verdict"] for c in self.checks}
        if "FAIL" in verdicts:
            return EXIT_FAIL
        if "UNKNOWN" in verdicts:
            return EXIT_UNKNOWN
        return EXIT_PASS

    def to_json(self) -> str:
        # wall time is deliberately omitted: reports must be byte-identical
        # across identical runs
        payload = {
            "command": self.command,
            "fixture": self.fixture,
            "seed": self.seed,
            "checks": self.checks,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def render(self, quiet: bool) -> str:
        lines = []
        counts = {"PASS": 0, "FAIL": 0, "UNKNOWN": 0}
        for check in self.checks:
            counts[check["verdict"]] += 1
            if quiet and check["verdict"] == "PASS":
                continue
            line = f"{check['verdict']:7s} {check['name']} [{check['provenance']}]"
            for key, value in check.get("details", {}).items():
                line += f"\n        {key}: {value}"
            lines.append(line)
        wall = time.monotonic() - self.started
        lines.append(
            f"{self.fixture}: {counts['PASS']} pass, {counts['FAIL']} fail, "
            f"{counts['UNKNOWN']} unknown (seed {self.seed}, {wall:.2f}s)")
        return "\n".join(lines) + "\n"


def _fraction_str(value) -> str:
    return str(Fraction(value))


def _vector_str(vec) -> str:
    return "[" + ", ".join(_fraction_str(v) for v in vec) + "]"


def _matrix_rows(mat) -> list[str]:
    return [_vector_str(row) for row in mat]


def lattice_block(lattice: integral.Lattice) -> dict:
    return {"denominator": lattice.denominator,
            "hnf_rows": [list(r) for r in lattice.rows]}


def _resolve(path_text: str) -> Path | None:
    p = Path(path_text)
    if p.exists():
        return p
    name = path_text[:-4] if path_text.endswith(".hgx") else path_text
    if name in BUNDLED:
        return bundled_path(name)
    return None


def _load(path_text: str) -> Fixture | None:
    resolved = _resolve(path_text)
    if resolved is None:
        print(f"error: no such fixture file or bundled fixture: {path_text}")
        return None
    try:
        return parse(resolved)
    except FixtureValidationError as err:
        print(f"error: {path_text} failed validation with "
              f"{len(err.problems)} problem(s):")
        for problem in err.problems:
            print(f"  - {problem}")
        return None


def _structure_label(fx: Fixture, index: int) -> str:
    profile = fx.structures()[index].as_group().order_profile()
    return f"structure[{index}] orders={list(profile)}"


def _opposite_index(fx: Fixture, index: int) -> int:
    structs = fx.structures()
    opp = opposite(structs[index], fx.coset_space())
    return next(i for i, n in enumerate(structs) if n == opp)


def _classical_index(fx: Fixture) -> int:
    if fx.stabilizer.order() == 1:
        rho = right_translation_subgroup(fx.coset_space())
        for i, n in enumerate(fx.structures()):
            if n == rho:
                return i
    return 0


def _structure_index(fx: Fixture, n: int) -> int:
    count = len(fx.structures())
    if not 0 <= n < count:
        raise HopfGaloisError(
            f"structure index {n} out of range; fixture {fx.name!r} has "
            f"{count} structure(s)")
    return n


def cmd_validate(fx: Fixture, args, report: Report):
    report.add("descriptor-valid", "PASS", "definition",
               group_order=fx.group.order(),
               coset_count=fx.coset_space().size,
               field="present" if fx.has_field else "absent")
    if fx.has_field:
        report.add("irreducibility", "PASS", fx.context.irreducibility)


def _check_assertions(fx: Fixture, report: Report):
    space = fx.coset_space()
    for key, spec in sorted(fx.assertions.items()):
        want = spec["value"]
        if key == "coset_count":
            got = space.size
        elif key == "structure_count":
            got = len(fx.structures())
        elif key == "center_order":
            got = fx.group.center().order()
        elif key == "nontrivial_proper_normal_orders":
            facts = group_queries(fx.group)
            got = sorted(h.order() for h in facts.normal_subgroups
                         if 1 < h.order() < fx.group.order())
        else:
            continue
        report.add(f"assertion:{key}", "PASS" if got == want else "FAIL",
                   spec["provenance"], expected=want, actual=got)


def cmd_enumerate(fx: Fixture, args, report: Report):
    structs = fx.structures()
    for i, n in enumerate(structs):
        facts = group_queries(n.as_group())
        opp = _opposite_index(fx, i)
        report.add(
            f"structure[{i}]", "PASS", "computed",
            order_profile=list(facts.iso_class[1]),
            abelian=facts.abelian,
            opposite=opp,
            center_order=facts.center.order(),
            normal_subgroup_orders=sorted(h.order() for h in facts.normal_subgroups))
    _check_assertions(fx, report)


def cmd_opposite_suite(fx: Fixture, args, report: Report):
    structs = fx.structures()
    space = fx.coset_space()
    for i, n in enumerate(structs):
        opp = opposite(n, space)
        ok_centralizer = set(opp.elements) == set(centralizer_bruteforce(n, space))
        ok_involution = opposite(opp, space) == n
        ok_order = len(opp.elements) == len(n.elements)
        inter = set(n.elements) & set(opp.elements)
        ok_center = inter == set(n.as_group().center().elements)
        witness = dict(_opposite_witness(n, space))
        ok_iso = _is_isomorphism(witness, n)
        self_opposite = opp == n
        ok_abelian = self_opposite == n.as_group().is_abelian()
        in_output = next((j for j, m in enumerate(structs) if m == opp), None)
        ok_closed = in_output is not None
        verdict = "PASS" if all((ok_centralizer, ok_involution, ok_order,
                                 ok_center, ok_iso, ok_abelian, ok_closed)) else "FAIL"
        report.add(f"opposite-suite[{i}]", verdict, "theorem",
                   centralizer=ok_centralizer, involution=ok_involution,
                   same_order=ok_order, intersection_is_center=ok_center,
                   isomorphic=ok_iso, abelian_iff_self_opposite=ok_abelian,
                   closed_under_opposite=ok_closed)


def _opposite_witness(n, space):
    """Pairs (eta, partner built from eta^{-1}) realizing the isomorphism of a
    regular subgroup with its opposite."""
    base = space.base_point
    table = n.build_point_map(base)
    for eta in n.elements:
        inv = eta.inverse()
        partner = Permutation(table[g](inv(base)) for g in range(n.size))
        yield eta, partner


def _is_isomorphism(mapping, n) -> bool:
    if len(set(mapping.values())) != len(n.elements):
        return False
    for a in n.elements:
        for b in n.elements:
            if mapping[a * b] != mapping[a] * mapping[b]:
                return False
    return True


def cmd_det_identity(fx: Fixture, args, report: Report):
    structs = fx.structures()
    targets = ([_structure_index(fx, args.n)] if args.n is not None
               else list(range(len(structs))))
    space = fx.coset_space()
    for i in targets:
        n = structs[i]
        ok = transition.verify_det_identity(n, space)
        poly = transition.canonical_det(n, space)
        report.add(f"det-identity[{i}]", "PASS" if ok else "FAIL", "theorem",
                   determinant=str(poly))


def cmd_descend(fx: Fixture, args, report: Report):
    algebra = fx.algebra(_structure_index(fx, args.n))
    basis_block = []
    for b in algebra.basis:
        basis_block.append([[_fraction_str(c) for c in coeff.coords]
                            for coeff in b.coefficients])
    matrices = [[[_fraction_str(v) for v in row] for row in mat]
                for mat in algebra.action_matrices]
    report.add(f"descend[{args.n}]", "PASS", "computed",
               dimension=algebra.dim,
               basis=json.dumps(basis_block),
               action_matrices=json.dumps(matrices))


def cmd_verify(fx: Fixture, args, report: Report, rng: random.Random):
    what = args.property
    structs = fx.structures()
    if what == "commuting":
        for i in range(len(structs)):
            for j in range(len(structs)):
                expected = _opposite_index(fx, i) == j
                actual = verify_commuting(fx.algebra(i), fx.algebra(j))
                report.add(f"commuting[{i},{j}]",
                           "PASS" if actual == expected else "FAIL", "theorem",
                           commute=actual, opposite_pair=expected)
    elif what == "hopf-galois":
        for i in range(len(structs)):
            ok = verify_hopf_galois(fx.algebra(i))
            report.add(f"hopf-galois[{i}]", "PASS" if ok else "FAIL", "theorem")
    elif what == "separable":
        for i in range(len(structs)):
            ok = is_separable(fx.algebra(i))
            report.add(f"separable[{i}]", "PASS" if ok else "FAIL", "theorem")
    elif what == "generators":
        sub = fx.subfield()
        pairs = sorted({tuple(sorted((i, _opposite_index(fx, i))))
                        for i in range(len(structs))})
        samples = [sub.random_element(rng) for _ in range(GENERATOR_SAMPLES)]
        for i, j in pairs:
            a1, a2 = fx.algebra(i), fx.algebra(j)
            agree = sum(1 for x in samples
                        if is_generator(a1, x) == is_generator(a2, x))
            report.add(f"generator-transfer[{i},{j}]",
                       "PASS" if agree == len(samples) else "FAIL", "theorem",
                       samples=len(samples), agreeing=agree)
    else:
        raise ValueError(f"unknown property {what!r}")


def cmd_assoc_order(fx: Fixture, args, report: Report):
    algebra = fx.algebra(_structure_index(fx, args.n))
    ideal = fx.ideal(args.ideal)
    order = integral.associated_order(algebra, ideal)
    report.add(f"assoc-order[{args.n},{args.ideal}]", "PASS", "computed",
               **lattice_block(order.lattice))


def cmd_freeness(fx: Fixture, args, report: Report):
    algebra = fx.algebra(_structure_index(fx, args.n))
    ideal = fx.ideal(args.ideal)
    order = integral.associated_order(algebra, ideal)
    result = integral.freeness_search(order, ideal, args.bound)
    if result.free:
        report.add(f"freeness[{args.n},{args.ideal}]", "PASS", "computed",
                   status="FREE",
                   witness=_vector_str(result.witness_ideal_coords),
                   witness_subfield_coords=_vector_str(result.witness_subfield_coords))
    else:
        report.add(f"freeness[{args.n},{args.ideal}]", "UNKNOWN", "computed",
                   status="UNKNOWN", bound=args.bound)


def cmd_theorem11(fx: Fixture, args, report: Report):
    index = (_structure_index(fx, args.n) if args.n is not None
             else _classical_index(fx))
    partner = _opposite_index(fx, index)
    ideal = fx.ideal(args.ideal)
    try:
        cert = integral.freeness_certificate(
            fx.algebra(index), fx.algebra(partner), ideal, args.bound)
    except TheoremViolationError as err:
        report.add(f"theorem11[{index},{partner},{args.ideal}]", "FAIL",
                   "theorem", error=str(err))
        return
    for side, result in (("main", cert.verdict_main),
                         ("partner", cert.verdict_partner)):
        name = f"theorem11:freeness-{side}[{args.ideal}]"
        if result.free:
            report.add(name, "PASS", "computed", status="FREE",
                       witness=_vector_str(result.witness_ideal_coords))
        else:
            report.add(name, "UNKNOWN", "computed", status="UNKNOWN",
                       bound=args.bound)
    for label, value in (
            ("witness-transfer", cert.witness_transfers),
            ("transferred-order-identity", cert.transferred_lattice_matches),
            ("commuting-transport", cert.commuting_transport_holds)):
        if value is None:
            report.add(f"theorem11:{label}", "UNKNOWN", "theorem",
                       note="no witness found within the bound")
        else:
            report.add(f"theorem11:{label}", "PASS" if value else "FAIL",
                       "theorem")


def cmd_suite(fx: Fixture, args, report: Report, rng: random.Random):
    cmd_enumerate(fx, args, report)
    cmd_opposite_suite(fx, args, report)
    cmd_det_identity(fx, argparse.Namespace(n=None), report)
    if fx.has_field:
        _specialization_checks(fx, report, rng)
        for prop in ("hopf-galois", "separable", "commuting", "generators"):
            cmd_verify(fx, argparse.Namespace(property=prop), report, rng)
        index = _classical_index(fx)
        for ideal_name in sorted(fx.ideal_vectors):
            cmd_assoc_order(fx, argparse.Namespace(n=index, ideal=ideal_name),
                            report)
            cmd_theorem11(fx, argparse.Namespace(
                n=index, ideal=ideal_name, bound=args.bound), report)


def _specialization_checks(fx: Fixture, report: Report, rng: random.Random,
                           points: int = 20):
    """Symbolic determinant evaluated at coset-representative images must match
    the numeric transition determinant."""
    from . import linalg
    from .descent import transition_matrix_values
    space = fx.coset_space()
    sub = fx.subfield()
    ctx = fx.context
    for i, n in enumerate(fx.structures()):
        matrix = transition.build_transition_matrix(n, space)
        poly = transition.det_symbolic(matrix)
        ok = True
        for _ in range(points):
            x = sub.random_element(rng)
            values = [None] * space.size
            from .descent import coset_apply
            for c in range(space.size):
                values[c] = coset_apply(ctx, space, c, x)
            numeric = linalg.det(transition_matrix_values(ctx, space, n, x))
            if poly.evaluate(values, ctx.field.one()) != numeric:
                ok = False
                break
        report.add(f"det-specialization[{i}]", "PASS" if ok else "FAIL",
                   "computed", points=points)


def _common_flags(parser, suppress: bool):
    blank = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--seed", type=int,
                        **(blank or {"default": 0}),
                        help="seed for the reproducible sampling suites")
    parser.add_argument("--json", action="store_true", **blank,
                        help="emit a machine-readable report")
    parser.add_argument("--quiet", action="store_true", **blank,
                        help="only report failures and the summary")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfgalois",
        description="Exact verification toolkit for Hopf-Galois structures "
                    "on separable field extensions")
    _common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *, leading=(), **kwargs):
        p = sub.add_parser(name, **kwargs)
        for spec in leading:
            p.add_argument(*spec[0], **spec[1])
        p.add_argument("fixture", help="fixture file or bundled fixture name")
        _common_flags(p, suppress=True)
        return p

    add("validate", help="parse and fully validate a descriptor")
    add("enumerate", help="list the structures with opposite pairing and "
                          "group facts")
    p = add("det-identity", help="verify the transition determinant identity")
    p.add_argument("--n", type=int, default=None, help="structure index")
    p = add("descend", help="emit the descended basis and action matrices")
    p.add_argument("--n", type=int, required=True, help="structure index")
    p = add("verify", help="run a verification suite",
            leading=[((  # the property comes before the fixture path
                "property",), {"choices": ["commuting", "generators",
                                           "hopf-galois", "separable"]})])
    p = add("assoc-order", help="compute an associated order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ideal", required=True)
    p = add("freeness", help="bounded search for a free generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--bound", type=int, default=3)
    p = add("theorem11", help="two-sided freeness certificate for a commuting "
                              "pair of structures")
    p.add_argument("--ideal", required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--n", type=int, default=None,
                   help="structure index (default: the classical structure)")
    p = add("suite", help="run every applicable check")
    p.add_argument("--bound", type=int, default=3)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else 0
    fx = _load(args.fixture)
    if fx is None:
        return EXIT_USAGE
    report = Report([args.command, args.fixture], fx.name, args.seed)
    rng = random.Random(args.seed)
    try:
        if args.command == "validate":
            cmd_validate(fx, args, report)
            _check_assertions(fx, report)
        elif args.command == "enumerate":
            cmd_enumerate(fx, args, report)
        elif args.command == "det-identity":
            cmd_det_identity(fx, args, report)
        elif args.command == "descend":
            cmd_descend(fx, args, report)
        elif args.command == "verify":
            cmd_verify(fx, args, report, rng)
        elif args.command == "assoc-order":
            cmd_assoc_order(fx, args, report)
        elif args.command == "freeness":
            cmd_freeness(fx, args, report)
        elif args.command == "theorem11":
            cmd_theorem11(fx, args, report)
        elif args.command == "suite":
            cmd_suite(fx, args, report, rng)
    except HopfGaloisError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render(args.quiet))
    return report.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
