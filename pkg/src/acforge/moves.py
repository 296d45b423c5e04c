"""Executable Andrews-Curtis move calculus with replayable certificates.

The eight moves (five primitives and the inverses that need their own
encoding) act on presentations whose relators are stored freely reduced.
Two consequences of eager reduction are deliberate and documented:

* InsertPair/DeletePair are identity maps on stored values (an adjacent
  cancelling pair reduces away immediately); they carry range checks only
  and exist so certificates can record pair bookkeeping.
* CyclicPermute stores the free reduction of the rotated word.  Rotating a
  relator that is not cyclically reduced strips a conjugating pair, which
  loses information; such a move has no inverse, and invert_certificate
  raises if asked to invert through one.

Certificate files are line-based: ``START <presentation>``, one move per
line, ``END <presentation>``.  Indices are 1-based; insertion positions are
0-based insertion points into the stored relator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .presentation import (
    Presentation,
    format_presentation,
    format_word,
    parse_presentation,
    parse_word,
)
from .words import Word, concat, free_reduce, invert, rotate


class MoveError(ValueError):
    """A move does not apply to the given presentation."""


class CertificateError(ValueError):
    """A certificate is malformed or does not replay."""


@dataclass(frozen=True)
class InsertPair:
    """Append-or-splice a cancelling pair a_j a_j^-1 into relator i.

    ``inverse_first`` selects a_j^-1 a_j.  Identity on stored (reduced)
    relators; position must be an insertion point 0..len."""

    relator: int
    position: int
    generator: int
    inverse_first: bool = False


@dataclass(frozen=True)
class DeletePair:
    """Inverse of InsertPair; identity on stored relators."""

    relator: int
    position: int


@dataclass(frozen=True)
class CyclicPermute:
    """Replace relator i by the free reduction of its rotation by ``shift``."""

    relator: int
    shift: int


@dataclass(frozen=True)
class InvertRelator:
    relator: int


@dataclass(frozen=True)
class MultiplyRight:
    """r_i -> r_i r_j, j != i."""

    relator: int
    other: int


@dataclass(frozen=True)
class MultiplyRightInverse:
    """r_i -> r_i r_j^-1, j != i."""

    relator: int
    other: int


@dataclass(frozen=True)
class Stabilize:
    """Add a fresh generator x and the relator x.w (w over the old generators)."""

    word: Word = ()


@dataclass(frozen=True)
class Destabilize:
    """Remove the last generator g=m together with relator i = g.w, g nowhere else."""

    generator: int
    relator: int


AcMove = Union[
    InsertPair,
    DeletePair,
    CyclicPermute,
    InvertRelator,
    MultiplyRight,
    MultiplyRightInverse,
    Stabilize,
    Destabilize,
]


@dataclass(frozen=True)
class AcCertificate:
    """A replayable move sequence claimed to transform start into end."""

    start: Presentation
    moves: Tuple[AcMove, ...]
    end: Presentation


def fresh_generator_name(existing) -> str:
    taken = set(existing)
    k = 1
    while f"x{k}" in taken:
        k += 1
    return f"x{k}"


def _check_relator_index(p: Presentation, i: int):
    if not 1 <= i <= len(p.relators):
        raise MoveError(f"relator index {i} out of range 1..{len(p.relators)}")


def _replace(p: Presentation, i: int, w: Word) -> Presentation:
    rels = list(p.relators)
    rels[i - 1] = w
    return Presentation(p.generators, tuple(rels))


def apply_move(p: Presentation, move: AcMove) -> Presentation:
    """Apply one move; the edited relator is stored freely reduced."""
    if isinstance(move, InsertPair):
        _check_relator_index(p, move.relator)
        r = p.relators[move.relator - 1]
        if not 0 <= move.position <= len(r):
            raise MoveError(f"insertion point {move.position} out of range 0..{len(r)}")
        if not 1 <= move.generator <= len(p.generators):
            raise MoveError(f"generator {move.generator} out of range")
        g = move.generator
        pair = (-g, g) if move.inverse_first else (g, -g)
        raw = r[: move.position] + pair + r[move.position :]
        return _replace(p, move.relator, free_reduce(raw))
    if isinstance(move, DeletePair):
        _check_relator_index(p, move.relator)
        r = p.relators[move.relator - 1]
        if not 0 <= move.position <= len(r):
            raise MoveError(f"deletion point {move.position} out of range 0..{len(r)}")
        return p
    if isinstance(move, CyclicPermute):
        _check_relator_index(p, move.relator)
        r = p.relators[move.relator - 1]
        return _replace(p, move.relator, free_reduce(rotate(r, move.shift)))
    if isinstance(move, InvertRelator):
        _check_relator_index(p, move.relator)
        return _replace(p, move.relator, invert(p.relators[move.relator - 1]))
    if isinstance(move, (MultiplyRight, MultiplyRightInverse)):
        _check_relator_index(p, move.relator)
        _check_relator_index(p, move.other)
        if move.relator == move.other:
            raise MoveError("relator cannot be multiplied by itself")
        other = p.relators[move.other - 1]
        if isinstance(move, MultiplyRightInverse):
            other = invert(other)
        return _replace(p, move.relator, concat(p.relators[move.relator - 1], other))
    if isinstance(move, Stabilize):
        m = len(p.generators)
        w = free_reduce(move.word)
        for x in w:
            if abs(x) > m:
                raise MoveError(f"stabilizing word letter {x} exceeds generator count {m}")
        name = fresh_generator_name(p.generators)
        return Presentation(p.generators + (name,), p.relators + ((m + 1,) + w,))
    if isinstance(move, Destabilize):
        m = len(p.generators)
        g, i = move.generator, move.relator
        _check_relator_index(p, i)
        if g != m or m == 0:
            raise MoveError(f"destabilize must remove the last generator {m}, not {g}")
        r = p.relators[i - 1]
        if not r or r[0] != g:
            raise MoveError("relator is not of the shape g.w")
        if any(abs(x) == g for x in r[1:]):
            raise MoveError("removed generator occurs inside its own relator tail")
        for k, other in enumerate(p.relators, start=1):
            if k != i and any(abs(x) == g for x in other):
                raise MoveError(f"removed generator occurs in relator {k}")
        rels = tuple(r2 for k, r2 in enumerate(p.relators, start=1) if k != i)
        return Presentation(p.generators[:-1], rels)
    raise MoveError(f"unknown move {move!r}")


def inverse_move(move: AcMove, before: Presentation) -> AcMove:
    """The move undoing ``move``, given the presentation it was applied to."""
    if isinstance(move, InsertPair):
        return DeletePair(move.relator, move.position)
    if isinstance(move, DeletePair):
        if not before.generators:
            raise MoveError("cannot invert DeletePair without any generator")
        return InsertPair(move.relator, move.position, 1)
    if isinstance(move, CyclicPermute):
        return CyclicPermute(move.relator, -move.shift)
    if isinstance(move, InvertRelator):
        return move
    if isinstance(move, MultiplyRight):
        return MultiplyRightInverse(move.relator, move.other)
    if isinstance(move, MultiplyRightInverse):
        return MultiplyRight(move.relator, move.other)
    if isinstance(move, Stabilize):
        return Destabilize(len(before.generators) + 1, len(before.relators) + 1)
    if isinstance(move, Destabilize):
        return Stabilize(before.relators[move.relator - 1][1:])
    raise MoveError(f"unknown move {move!r}")


def replay_trace(cert: AcCertificate):
    """Fold the moves; returns (ok, failing_step_or_None, final_presentation).

    ``failing_step`` is the 0-based index of the first invalid move, or the
    move count if every move applied but the end does not match.
    """
    current = cert.start
    for step, move in enumerate(cert.moves):
        try:
            current = apply_move(current, move)
        except MoveError:
            return False, step, current
    if current != cert.end:
        return False, len(cert.moves), current
    return True, None, current


def replay(cert: AcCertificate) -> bool:
    """True iff replaying the moves from start yields exactly end."""
    return replay_trace(cert)[0]


def invert_certificate(cert: AcCertificate) -> AcCertificate:
    """Certificate from end back to start: inverses in reverse order.

    Raises CertificateError if the input does not replay or contains an
    information-losing move (a reducing cyclic permutation).
    """
    states = [cert.start]
    for step, move in enumerate(cert.moves):
        try:
            states.append(apply_move(states[-1], move))
        except MoveError as e:
            raise CertificateError(f"input certificate invalid at step {step}: {e}")
    if states[-1] != cert.end:
        raise CertificateError("input certificate does not replay to its end")
    inv_moves = tuple(
        inverse_move(move, before)
        for move, before in zip(reversed(cert.moves), reversed(states[:-1]))
    )
    result = AcCertificate(cert.end, inv_moves, cert.start)
    ok, step, _ = replay_trace(result)
    if not ok:
        raise CertificateError(
            f"certificate is not invertible (inverse fails at step {step}); "
            "it contains a reducing cyclic permutation"
        )
    return result


# --- certificate files -------------------------------------------------------


def format_certificate(cert: AcCertificate) -> str:
    """Serialize; replays internally so STAB words print with live names."""
    lines = [f"START {format_presentation(cert.start)}"]
    current = cert.start
    for move in cert.moves:
        if isinstance(move, InsertPair):
            flag = "-" if move.inverse_first else "+"
            lines.append(f"INSPAIR {move.relator} {move.position} {move.generator} {flag}")
        elif isinstance(move, DeletePair):
            lines.append(f"DELPAIR {move.relator} {move.position}")
        elif isinstance(move, CyclicPermute):
            lines.append(f"CYC {move.relator} {move.shift}")
        elif isinstance(move, InvertRelator):
            lines.append(f"INV {move.relator}")
        elif isinstance(move, MultiplyRight):
            lines.append(f"MULR {move.relator} {move.other}")
        elif isinstance(move, MultiplyRightInverse):
            lines.append(f"MULRI {move.relator} {move.other}")
        elif isinstance(move, Stabilize):
            lines.append(f"STAB {format_word(move.word, current.generators)}")
        elif isinstance(move, Destabilize):
            lines.append(f"DESTAB {move.generator} {move.relator}")
        else:
            raise CertificateError(f"unknown move {move!r}")
        current = apply_move(current, move)
    lines.append(f"END {format_presentation(cert.end)}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> AcCertificate:
    """Parse a certificate file; moves are replayed to resolve STAB words."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    if not lines or not lines[0][1].startswith("START"):
        raise CertificateError("certificate must begin with a START line")
    if not lines[-1][1].startswith("END"):
        raise CertificateError("certificate must finish with an END line")

    def _pres(line, keyword):
        return parse_presentation(line[len(keyword) :].strip())

    start = _pres(lines[0][1], "START")
    end = _pres(lines[-1][1], "END")
    moves: List[AcMove] = []
    current: Optional[Presentation] = start
    for lineno, line in lines[1:-1]:
        fields = line.split()
        op, args = fields[0], fields[1:]
        try:
            if op == "INSPAIR":
                i, pos, g, flag = int(args[0]), int(args[1]), int(args[2]), args[3]
                if flag not in "+-":
                    raise ValueError(f"bad pair flag {flag!r}")
                move: AcMove = InsertPair(i, pos, g, inverse_first=(flag == "-"))
            elif op == "DELPAIR":
                move = DeletePair(int(args[0]), int(args[1]))
            elif op == "CYC":
                move = CyclicPermute(int(args[0]), int(args[1]))
            elif op == "INV":
                (i,) = args
                move = InvertRelator(int(i))
            elif op == "MULR":
                move = MultiplyRight(int(args[0]), int(args[1]))
            elif op == "MULRI":
                move = MultiplyRightInverse(int(args[0]), int(args[1]))
            elif op == "STAB":
                if current is None:
                    raise CertificateError(
                        f"line {lineno}: cannot resolve STAB word after an invalid move"
                    )
                move = Stabilize(parse_word(line[len("STAB") :].strip(), current.generators))
            elif op == "DESTAB":
                move = Destabilize(int(args[0]), int(args[1]))
            else:
                raise ValueError(f"unknown move keyword {op!r}")
        except (IndexError, ValueError) as e:
            raise CertificateError(f"line {lineno}: {e}")
        moves.append(move)
        if current is not None:
            try:
                current = apply_move(current, move)
            except MoveError:
                current = None
    return AcCertificate(start, tuple(moves), end)
