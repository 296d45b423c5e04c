"""Dual presentations from occurrence orderings, and their alignment.

Given a balanced presentation P on generators a_1..a_n with relators
r_1..r_n, the dual presentation has one generator per relator of P and one
relator rho_i per generator of P: each occurrence a_i^e inside r_j
contributes a letter (dual generator j)^e to rho_i, taken in a chosen
per-generator order of all occurrences of a_i.  With the default
left-to-right scan order, the dual's exponent matrix is exactly the
transpose of P's.

Occurrence orders are free, and cancelling pairs a_i a_i^-1 may be spliced
into relators without changing the group or the matrix.  ``align`` uses
both freedoms: it builds a trivial-group presentation Q realizing the
transposed matrix (with its trivializing certificate), pads whichever side
has too few occurrences, and picks the order making the dual of the padded
P agree with Q letter for letter.  The result certifies that the chosen
dual presents the trivial group.

Augmented presentations keep relators as raw (unreduced) letter sequences:
inserted pairs must stay addressable as occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from .intmatrix import IntMatrix, exponent_matrix, invariant_factors, determinant
from .moves import AcCertificate, InsertPair, apply_move
from .presentation import (
    NAME_RE,
    Presentation,
    format_presentation,
    is_balanced,
    parse_raw,
)
from .words import Word, exponent_vector, free_reduce


class Occurrence(NamedTuple):
    """One signed appearance of a generator: relator index (1-based),
    position in that relator's raw letter sequence (0-based), sign."""

    relator: int
    position: int
    sign: int


@dataclass(frozen=True)
class OrderingWitness:
    """Per generator, an ordering of all its occurrences across relators."""

    per_generator: Tuple[Tuple[Occurrence, ...], ...]


@dataclass(frozen=True)
class AugmentedPresentation:
    """A presentation whose relators are raw letter sequences.

    Cancelling pairs are preserved; ``reduced()`` collapses back to the
    ordinary presentation.
    """

    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __post_init__(self):
        m = len(self.generators)
        names = set()
        for name in self.generators:
            if not NAME_RE.fullmatch(name) or name in names:
                raise ValueError(f"bad or duplicate generator name {name!r}")
            names.add(name)
        for r in self.relators:
            for x in r:
                if not isinstance(x, int) or x == 0 or abs(x) > m:
                    raise ValueError(f"bad relator letter {x!r}")

    def reduced(self) -> Presentation:
        return Presentation(self.generators, tuple(free_reduce(r) for r in self.relators))


@dataclass(frozen=True)
class PairInsertion:
    """Splice ``count`` copies of a_gen a_gen^-1 into relator ``relator`` at
    ``position`` (0-based point in the current raw sequence)."""

    relator: int
    generator: int
    count: int
    position: int


@dataclass(frozen=True)
class KnotCertificate:
    """The full output bundle pairing a perfect balanced presentation with
    an aligned, trivializable dual.

    source:         the input presentation P
    augmented:      P with cancelling pairs spliced in (raw sequences)
    witness:        occurrence ordering with dualize(augmented, witness) == dual
    dual:           presentation of the trivial group
    trivialization: certificate from the empty presentation to dual
    """

    source: Presentation
    augmented: AugmentedPresentation
    witness: OrderingWitness
    dual: Presentation
    trivialization: AcCertificate


def _require_balanced(p) -> int:
    if not is_balanced(p):
        raise ValueError(
            f"presentation is not balanced: {len(p.generators)} generator(s), "
            f"{len(p.relators)} relator(s)"
        )
    return len(p.generators)


def occurrence_lists(p) -> Tuple[Tuple[Occurrence, ...], ...]:
    """All occurrences of each generator, scanning r_1..r_n left to right."""
    out: List[List[Occurrence]] = [[] for _ in p.generators]
    for j, r in enumerate(p.relators, start=1):
        for pos, x in enumerate(r):
            out[abs(x) - 1].append(Occurrence(j, pos, 1 if x > 0 else -1))
    return tuple(tuple(lst) for lst in out)


def default_witness(p) -> OrderingWitness:
    """Occurrences in plain scan order; accepts reduced or augmented input."""
    _require_balanced(p)
    return OrderingWitness(occurrence_lists(p))


def _check_witness(p, w: OrderingWitness):
    actual = occurrence_lists(p)
    if len(w.per_generator) != len(actual):
        raise ValueError(
            f"witness covers {len(w.per_generator)} generator(s), "
            f"presentation has {len(actual)}"
        )
    for i, (claimed, truth) in enumerate(zip(w.per_generator, actual), start=1):
        if sorted(claimed) != sorted(truth):
            raise ValueError(
                f"witness for generator {i} is not a permutation of its occurrence set"
            )


def dual_generator_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{k}" for k in range(1, n + 1))


def dualize(p, w: OrderingWitness | None = None) -> Presentation:
    """The dual presentation under the given (default: scan-order) witness.

    Dual relator i reads off (dual generator j)^sign per occurrence of
    generator i, in witness order; stored freely reduced.
    """
    n = _require_balanced(p)
    if w is None:
        w = default_witness(p)
    _check_witness(p, w)
    relators = tuple(
        free_reduce([occ.sign * occ.relator for occ in occs]) for occs in w.per_generator
    )
    return Presentation(dual_generator_names(n), relators)


def transpose_check(p) -> bool:
    """Self-check: the default dual's exponent matrix equals A^T exactly."""
    a = exponent_matrix(p)  # raw and reduced relators count the same
    dual_matrix = exponent_matrix(dualize(p, default_witness(p)))
    return dual_matrix == a.transpose()


def insert_pairs(p, insertions: Iterable[PairInsertion]) -> AugmentedPresentation:
    """Splice cancelling pairs into relators, keeping raw sequences.

    Insertions apply in list order; each position refers to the relator's
    raw sequence as already augmented by earlier insertions.
    """
    gens = p.generators
    rels = [list(r) for r in p.relators]
    for ins in insertions:
        if not 1 <= ins.relator <= len(rels):
            raise ValueError(f"relator index {ins.relator} out of range")
        if not 1 <= ins.generator <= len(gens):
            raise ValueError(f"generator index {ins.generator} out of range")
        if ins.count < 0:
            raise ValueError("negative insertion count")
        r = rels[ins.relator - 1]
        if not 0 <= ins.position <= len(r):
            raise ValueError(
                f"position {ins.position} out of range 0..{len(r)} in relator {ins.relator}"
            )
        pair = [ins.generator, -ins.generator] * ins.count
        rels[ins.relator - 1] = r[: ins.position] + pair + r[ins.position :]
    return AugmentedPresentation(tuple(gens), tuple(tuple(r) for r in rels))


def _signed_counts(relators: Sequence[Word], m: int):
    """plus[g-1][j-1], minus[g-1][j-1]: occurrence counts of generator g in
    relator j by sign."""
    n = len(relators)
    plus = [[0] * n for _ in range(m)]
    minus = [[0] * n for _ in range(m)]
    for j, r in enumerate(relators):
        for x in r:
            (plus if x > 0 else minus)[abs(x) - 1][j] += 1
    return plus, minus


def align(p: Presentation) -> KnotCertificate:
    """Choose pads and an occurrence order making the dual provably trivial.

    Requires a balanced presentation of a perfect group (unimodular
    exponent matrix).  Returns the full certificate bundle; every claimed
    identity is checked before returning.
    """
    from .lemma2 import presentation_from_matrix

    n = _require_balanced(p)
    a = exponent_matrix(p)
    if n and abs(determinant(a)) != 1:
        raise ValueError(
            f"presentation is not perfect: det {determinant(a)}, "
            f"invariant factors {invariant_factors(a)}"
        )
    q, cert = presentation_from_matrix(a.transpose())

    plus_p, minus_p = _signed_counts(p.relators, n)
    plus_q = [[0] * n for _ in range(n)]  # [i][j]: +j letters in q_i
    minus_q = [[0] * n for _ in range(n)]
    for i, r in enumerate(q.relators):
        for x in r:
            (plus_q if x > 0 else minus_q)[i][abs(x) - 1] += 1

    # P-side deficits: splice pairs at the end of the short relators
    insertions: List[PairInsertion] = []
    extra = [0] * n  # letters appended to relator j so far
    for j in range(n):
        for i in range(n):
            deficit = plus_q[i][j] - plus_p[i][j]
            if deficit > 0:
                assert minus_q[i][j] - minus_p[i][j] == deficit
                insertions.append(
                    PairInsertion(
                        relator=j + 1,
                        generator=i + 1,
                        count=deficit,
                        position=len(p.relators[j]) + extra[j],
                    )
                )
                extra[j] += 2 * deficit
    augmented = insert_pairs(p, insertions)

    # Q-side surpluses: pad rho_i with cancelling dual-generator pairs.
    # The moves are identities on stored (reduced) relators, so the dual
    # presentation is unchanged; they record the padding in the certificate.
    moves = list(cert.moves)
    current = q
    surplus = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = plus_p[i][j] - plus_q[i][j]
            if s > 0:
                assert minus_p[i][j] - minus_q[i][j] == s
                surplus[i][j] = s
                for _ in range(s):
                    move = InsertPair(
                        relator=i + 1,
                        position=len(current.relators[i]),
                        generator=j + 1,
                    )
                    current = apply_move(current, move)
                    moves.append(move)
    assert current == q
    trivialization = AcCertificate(cert.start, tuple(moves), current)

    # Witness: realize q_i followed by the surplus pads, consuming each
    # (generator, relator, sign) occurrence class in scan order.
    pools: Dict[Tuple[int, int, int], List[Occurrence]] = {}
    for i, occs in enumerate(occurrence_lists(augmented), start=1):
        for occ in occs:
            pools.setdefault((i, occ.relator, occ.sign), []).append(occ)
    next_free = {key: 0 for key in pools}

    def take(i: int, j: int, sign: int) -> Occurrence:
        key = (i, j, sign)
        idx = next_free[key]
        next_free[key] = idx + 1
        return pools[key][idx]

    per_generator = []
    for i in range(1, n + 1):
        target = list(q.relators[i - 1])
        for j in range(1, n + 1):
            target.extend([j, -j] * surplus[i - 1][j - 1])
        per_generator.append(tuple(take(i, abs(x), 1 if x > 0 else -1) for x in target))
    witness = OrderingWitness(tuple(per_generator))

    dual = dualize(augmented, witness)
    if dual != current:
        raise AssertionError("alignment failed: dual does not match the built presentation")
    kc = KnotCertificate(
        source=p,
        augmented=augmented,
        witness=witness,
        dual=dual,
        trivialization=trivialization,
    )
    problems = verify_knot_certificate(kc)
    if problems:
        raise AssertionError(f"alignment produced an invalid bundle: {problems}")
    return kc


def verify_knot_certificate(kc: KnotCertificate) -> List[str]:
    """Re-check every claimed identity; returns a list of failures (empty = good)."""
    from .moves import replay

    problems = []
    if kc.augmented.reduced() != kc.source:
        problems.append("augmented presentation does not reduce to the source")
    m = len(kc.source.generators)
    src_matrix = exponent_matrix(kc.source)
    aug_rows = [exponent_vector(r, m) for r in kc.augmented.relators]
    if IntMatrix(aug_rows, ncols=m) != src_matrix:
        problems.append("pair insertion changed the exponent matrix")
    try:
        dual = dualize(kc.augmented, kc.witness)
    except ValueError as e:
        problems.append(f"witness invalid: {e}")
    else:
        if dual != kc.dual:
            problems.append("dual does not equal dualize(augmented, witness)")
    if exponent_matrix(kc.dual) != src_matrix.transpose():
        problems.append("dual's exponent matrix is not the transpose")
    if kc.trivialization.start.generators or kc.trivialization.start.relators:
        problems.append("trivialization does not start at the empty presentation")
    if kc.trivialization.end != kc.dual:
        problems.append("trivialization does not end at the dual")
    if not replay(kc.trivialization):
        problems.append("trivialization certificate does not replay")
    return problems


# --- bundle files ------------------------------------------------------------


def format_witness(w: OrderingWitness) -> str:
    """One line per generator: space-separated relator:position:sign triples."""
    lines = []
    for occs in w.per_generator:
        lines.append(
            " ".join(f"{o.relator}:{o.position}:{'+' if o.sign > 0 else '-'}" for o in occs)
        )
    return "\n".join(lines) + ("\n" if lines else "")


def parse_witness(text: str) -> OrderingWitness:
    per_generator = []
    for line in text.splitlines():
        occs = []
        for triple in line.split():
            j, pos, sign = triple.split(":")
            if sign not in "+-":
                raise ValueError(f"bad sign {sign!r} in witness triple {triple!r}")
            occs.append(Occurrence(int(j), int(pos), 1 if sign == "+" else -1))
        per_generator.append(tuple(occs))
    return OrderingWitness(tuple(per_generator))


BUNDLE_FILES = (
    "source.pres",
    "augmented.pres",
    "witness.txt",
    "dual.pres",
    "trivialization.cert",
)


def write_bundle(kc: KnotCertificate, directory) -> None:
    from pathlib import Path

    from .moves import format_certificate

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "source.pres").write_text(format_presentation(kc.source) + "\n")
    (d / "augmented.pres").write_text(format_presentation(kc.augmented) + "\n")
    (d / "witness.txt").write_text(format_witness(kc.witness))
    (d / "dual.pres").write_text(format_presentation(kc.dual) + "\n")
    (d / "trivialization.cert").write_text(format_certificate(kc.trivialization))


def read_bundle(directory) -> KnotCertificate:
    from pathlib import Path

    from .moves import parse_certificate
    from .presentation import parse_presentation

    d = Path(directory)
    source = parse_presentation((d / "source.pres").read_text())
    names, raw = parse_raw((d / "augmented.pres").read_text())
    augmented = AugmentedPresentation(names, raw)
    witness = parse_witness((d / "witness.txt").read_text())
    dual = parse_presentation((d / "dual.pres").read_text())
    trivialization = parse_certificate((d / "trivialization.cert").read_text())
    return KnotCertificate(source, augmented, witness, dual, trivialization)
