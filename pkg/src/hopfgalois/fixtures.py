"""Parser and validator for `.hgx` extension descriptors, plus the bundled
fixture library.

A descriptor is a JSON document with named blocks: a group (permutation
generators or a split metacyclic presentation), a stabilizer subgroup, an
optional exact field block (minimal polynomial and automorphism images of the
generator, low-degree-first coefficient arrays, rationals as "p/q" strings),
an integral basis, and named fractional-ideal bases.  Validation reports every
failure found, not just the first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from . import linalg
from .errors import FixtureValidationError, HopfGaloisError, StructureError
from .integral import FractionalIdeal, Lattice
from .numberfield import FieldElement, GaloisContext, Subfield, load_field
from .perm import (CosetSpace, FiniteGroup, LambdaEmbedding, Permutation,
                   build_coset_space, enumerate_regular_normalized,
                   left_translation_embedding, metacyclic_group)

BUNDLED = ("qi", "qzeta3", "c4quartic", "v4biquad", "qcbrt2", "s3sextic",
           "metacyclic21")


def bundled_path(name: str):
    """Filesystem path of a bundled fixture (with or without extension)."""
    if name.endswith(".hgx"):
        name = name[:-4]
    ref = resources.files("hopfgalois").joinpath(f"data/{name}.hgx")
    return ref


def _parse_rational(value, problems, where) -> Fraction:
    try:
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, int):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    problems.append(f"{where}: not a rational number: {value!r}")
    return Fraction(0)


def _parse_vector(values, problems, where):
    if not isinstance(values, list):
        problems.append(f"{where}: expected an array of rationals")
        return []
    return [_parse_rational(v, problems, f"{where}[{i}]")
            for i, v in enumerate(values)]


class Fixture:
    """A fully validated descriptor with lazily assembled derived data."""

    def __init__(self, raw, group, generator_names, stabilizer, context,
                 integral_basis, ideal_vectors, assertions):
        self.raw = raw
        self.name = raw["name"]
        self.group: FiniteGroup = group
        self.generator_names: dict[str, int] = generator_names
        self.stabilizer: FiniteGroup = stabilizer
        self.context: GaloisContext | None = context
        self.integral_basis: list[FieldElement] | None = integral_basis
        self.ideal_vectors: dict[str, list[FieldElement]] = ideal_vectors
        self.assertions = assertions
        self._space = None
        self._lam = None
        self._subfield = None
        self._structures = None
        self._algebras = {}
        self._ideals = {}

    @property
    def has_field(self) -> bool:
        return self.context is not None

    def coset_space(self) -> CosetSpace:
        if self._space is None:
            self._space = build_coset_space(self.group, self.stabilizer)
        return self._space

    def translation_embedding(self) -> LambdaEmbedding:
        if self._lam is None:
            self._lam = left_translation_embedding(self.coset_space())
        return self._lam

    def subfield(self) -> Subfield:
        if self.context is None:
            raise HopfGaloisError(
                f"fixture {self.name!r} has no field block; only group-level "
                "operations are available")
        if self._subfield is None:
            self._subfield = self.context.fixed_subfield(self.stabilizer)
        return self._subfield

    def structures(self, bound: int = 8):
        if self._structures is None:
            self._structures = enumerate_regular_normalized(
                self.coset_space(), self.translation_embedding(), bound)
        return self._structures

    def algebra(self, index: int):
        if index not in self._algebras:
            from .descent import descend
            sub = self.subfield()
            self._algebras[index] = descend(
                self.context, self.coset_space(), self.translation_embedding(),
                self.structures()[index], sub)
        return self._algebras[index]

    def ring_multiplication_matrices(self):
        sub = self.subfield()
        return [sub.multiplication_matrix(e) for e in self.integral_basis]

    def ideal(self, name: str) -> FractionalIdeal:
        if name not in self._ideals:
            if name not in self.ideal_vectors:
                raise HopfGaloisError(
                    f"fixture {self.name!r} has no ideal named {name!r}; "
                    f"available: {sorted(self.ideal_vectors)}")
            sub = self.subfield()
            rows = [sub.coords(e) for e in self.ideal_vectors[name]]
            lattice = Lattice.from_rational_rows(rows)
            self._ideals[name] = FractionalIdeal.build(
                name, lattice, self.ring_multiplication_matrices())
        return self._ideals[name]

    def to_text(self) -> str:
        return json.dumps(self.raw, sort_keys=True, indent=2) + "\n"

    def __eq__(self, other):
        return isinstance(other, Fixture) and _normalize(self.raw) == _normalize(other.raw)

    def __repr__(self):
        return f"Fixture({self.name!r})"


def _normalize(obj):
    if isinstance(obj, dict):
        return {k: _normalize(v) for k, v in sorted(obj.items())}
    if isinstance(obj, list):
        return [_normalize(v) for v in obj]
    if isinstance(obj, str):
        try:
            return str(Fraction(obj))
        except ValueError:
            return obj
    return obj


def _build_group(block, problems):
    if not isinstance(block, dict):
        problems.append("group: expected an object")
        return None, {}
    declared = block.get("order")
    if not isinstance(declared, int) or declared < 1:
        problems.append("group.order: a positive integer is required")
        return None, {}
    if "presentation" in block:
        pres = block["presentation"]
        if pres.get("kind") != "metacyclic":
            problems.append(
                f"group.presentation.kind: unsupported kind {pres.get('kind')!r}; "
                "only the split metacyclic family is supported")
            return None, {}
        names = pres.get("generators", ["s", "t"])
        try:
            r, q, d = int(pres["r"]), int(pres["q"]), int(pres["d"])
        except (KeyError, TypeError, ValueError):
            problems.append("group.presentation: integer r, q, d are required")
            return None, {}
        try:
            group, s_perm, t_perm = metacyclic_group(r, q, d)
        except StructureError as err:
            problems.append(f"group.presentation: {err}")
            return None, {}
        if group.order() != declared:
            problems.append(
                f"group.presentation: defines a group of order {group.order()}, "
                f"declared {declared}")
            return None, {}
        return group, {names[0]: group.index_of(s_perm),
                       names[1]: group.index_of(t_perm)}
    gens_block = block.get("generators")
    if not isinstance(gens_block, dict) or not gens_block:
        problems.append("group.generators: a nonempty object is required")
        return None, {}
    perms = {}
    degree = None
    for gname, images in gens_block.items():
        try:
            p = Permutation(images)
        except (HopfGaloisError, TypeError) as err:
            problems.append(f"group.generators.{gname}: {err}")
            continue
        if degree is None:
            degree = p.degree
        elif p.degree != degree:
            problems.append(
                f"group.generators.{gname}: degree {p.degree} differs from {degree}")
            continue
        perms[gname] = p
    if len(perms) != len(gens_block):
        return None, {}
    try:
        group = FiniteGroup.generated_by(list(perms.values()), limit=declared)
    except StructureError as err:
        problems.append(f"group: {err}")
        return None, {}
    if group.order() != declared:
        problems.append(
            f"group: generators close to order {group.order()}, declared {declared}")
        return None, {}
    return group, {g: group.index_of(p) for g, p in perms.items()}


def _evaluate_word(word: str, group: FiniteGroup, names, problems, where):
    result = group.elements[group.identity_index]
    for token in word.split("*"):
        token = token.strip()
        if not token:
            problems.append(f"{where}: empty factor in word {word!r}")
            return None
        if "^" in token:
            base, _, exp = token.partition("^")
            base = base.strip()
            try:
                power = int(exp)
            except ValueError:
                problems.append(f"{where}: bad exponent in {token!r}")
                return None
        else:
            base, power = token, 1
        if base not in names:
            problems.append(f"{where}: unknown generator {base!r} in word {word!r}")
            return None
        g = group.elements[names[base]]
        if power < 0:
            g = g.inverse()
            power = -power
        for _ in range(power):
            result = result * g
    return result


def _build_stabilizer(block, group, names, problems):
    gens = []
    entries = (block or {}).get("generators", [])
    if not isinstance(entries, list):
        problems.append("subgroup.generators: expected an array")
        return None
    for i, entry in enumerate(entries):
        where = f"subgroup.generators[{i}]"
        if isinstance(entry, str):
            g = _evaluate_word(entry, group, names, problems, where)
            if g is None:
                return None
        else:
            try:
                g = Permutation(entry)
            except (HopfGaloisError, TypeError) as err:
                problems.append(f"{where}: {err}")
                return None
            if g not in group:
                problems.append(
                    f"{where}: permutation {list(g.images)} is not an element "
                    "of the group")
                return None
        gens.append(g)
    if not gens:
        return FiniteGroup.trivial(group.degree)
    return FiniteGroup.generated_by(gens)


def parse_text(text: str) -> Fixture:
    """Parse and fully validate a descriptor; raises FixtureValidationError
    carrying every problem found."""
    problems: list[str] = []
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise FixtureValidationError(
            [f"syntax error at line {err.lineno}, column {err.colno}: {err.msg}"])
    if not isinstance(raw, dict):
        raise FixtureValidationError(["descriptor must be a JSON object"])
    if not isinstance(raw.get("name"), str) or not raw.get("name"):
        problems.append("name: a nonempty string is required")
        raw.setdefault("name", "<unnamed>")

    group, names = _build_group(raw.get("group"), problems)
    if group is None:
        raise FixtureValidationError(problems)
    stabilizer = _build_stabilizer(raw.get("subgroup"), group, names, problems)
    if stabilizer is None:
        raise FixtureValidationError(problems)

    context = None
    integral_basis = None
    ideal_vectors: dict[str, list[FieldElement]] = {}
    if "field" in raw:
        core = [p for p in stabilizer.elements
                if all(q * p * q.inverse() in stabilizer
                       for q in group.elements)]
        if len(core) > 1:
            problems.append(
                "subgroup: its core in the group is nontrivial, so the field "
                "is larger than the Galois closure of the fixed subfield")
        fblock = raw["field"]
        min_poly = fblock.get("min_poly")
        autos = fblock.get("automorphisms", {})
        images = {}
        for gname, coeffs in autos.items():
            if gname not in names:
                problems.append(f"field.automorphisms: unknown generator {gname!r}")
                continue
            images[names[gname]] = _parse_vector(
                coeffs, problems, f"field.automorphisms.{gname}")
        missing = [g for g in names if names[g] in group.generators
                   and names[g] not in images]
        if missing:
            problems.append(
                f"field.automorphisms: missing images for generators {missing}")
        if not problems:
            try:
                context = load_field(
                    min_poly, group, images,
                    irreducible_asserted=fblock.get("irreducible") == "asserted")
            except HopfGaloisError as err:
                problems.append(f"field: {err}")
        if context is not None:
            sub = context.fixed_subfield(stabilizer)
            integral_basis = _validate_integral_basis(
                raw.get("integral_basis"), context, sub, problems)
            for iname, vectors in (raw.get("ideals") or {}).items():
                elems = _validate_ideal_vectors(
                    iname, vectors, context, sub, problems)
                if elems is not None:
                    ideal_vectors[iname] = elems

    assertions = _validate_assertions(raw.get("assertions"), problems)
    if problems:
        raise FixtureValidationError(problems)
    return Fixture(raw, group, names, stabilizer, context,
                   integral_basis, ideal_vectors, assertions)


def _validate_integral_basis(block, context, sub: Subfield, problems):
    if block is None:
        problems.append("integral_basis: required when a field block is present")
        return None
    elems = []
    for i, vec in enumerate(block):
        coords = _parse_vector(vec, problems, f"integral_basis[{i}]")
        if len(coords) != context.degree:
            problems.append(
                f"integral_basis[{i}]: expected {context.degree} coordinates")
            return None
        e = context.field.element(coords)
        if not sub.contains(e):
            problems.append(
                f"integral_basis[{i}]: element is not fixed by the stabilizer")
            return None
        elems.append(e)
    if len(elems) != sub.dim:
        problems.append(
            f"integral_basis: {len(elems)} elements cannot span a subfield of "
            f"dimension {sub.dim}")
        return None
    try:
        solver = linalg.LinearSolver([sub.coords(e) for e in elems])
    except ValueError:
        problems.append("integral_basis: elements are linearly dependent")
        return None
    one = solver.solve(sub.coords(context.field.one()))
    if one is None or any(c.denominator != 1 for c in one):
        problems.append("integral_basis: 1 is not an integer combination of the basis")
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            coords = solver.solve(sub.coords(a * b))
            if coords is None or any(c.denominator != 1 for c in coords):
                problems.append(
                    "integral_basis: not multiplicatively closed; the product "
                    f"of elements {i} and {j} leaves the span")
                return elems if not problems else None
    return elems


def _validate_ideal_vectors(name, vectors, context, sub: Subfield, problems):
    elems = []
    for i, vec in enumerate(vectors):
        coords = _parse_vector(vec, problems, f"ideals.{name}[{i}]")
        if len(coords) != context.degree:
            problems.append(f"ideals.{name}[{i}]: expected {context.degree} coordinates")
            return None
        e = context.field.element(coords)
        if not sub.contains(e):
            problems.append(
                f"ideals.{name}[{i}]: element is not fixed by the stabilizer")
            return None
        elems.append(e)
    if len(elems) != sub.dim:
        problems.append(
            f"ideals.{name}: {len(elems)} vectors cannot be a full-rank lattice "
            f"in dimension {sub.dim}")
        return None
    rows = [sub.coords(e) for e in elems]
    if linalg.rank(rows) != sub.dim:
        problems.append(f"ideals.{name}: basis vectors are linearly dependent")
        return None
    return elems


_KNOWN_ASSERTIONS = {"coset_count", "structure_count", "center_order",
                     "nontrivial_proper_normal_orders"}


def _validate_assertions(block, problems):
    if block is None:
        return {}
    out = {}
    for key, spec in block.items():
        if key not in _KNOWN_ASSERTIONS:
            problems.append(f"assertions.{key}: unknown assertion")
            continue
        if not isinstance(spec, dict) or "value" not in spec:
            problems.append(f"assertions.{key}: expected an object with a value")
            continue
        out[key] = {"value": spec["value"],
                    "provenance": spec.get("provenance", "unspecified")}
    return out


def parse(path) -> Fixture:
    """Parse and validate the descriptor file at `path` (UTF-8)."""
    if hasattr(path, "read_text"):
        content = path.read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            content = fh.read()
    return parse_text(content)


def load_bundled(name: str) -> Fixture:
    return parse_text(bundled_path(name).read_text(encoding="utf-8"))
