"""Deciding whether a coloring contains a solution chain.

A solution for sizes (m1, ..., mt) is a chain B1, B2, ..., Bt of sets of
positions with |Bi| = mi, each set monochromatic (different sets may use
different colors), max(Bi) < min(B(i+1)), and nondecreasing diameters
diam(B1) <= ... <= diam(Bt). The strict variant replaces <= by <.

Three independent routes decide existence:

* exists_solution: a suffix dynamic program over (stage, start position),
  polynomial in N; also extracts the canonical witness.
* IncrementalState: a forward dynamic program maintained position by
  position, built for the search engine's extend/retract loop.
* brute_force_exists: backtracking straight from the definition, capped
  at small N, kept as the reference oracle for the other two.

All routes exploit one observation: a monochromatic m-set with minimum i,
maximum j and color k exists exactly when i and j both have color k and
at least m positions of color k lie in [i, j]. Only (min, max, color)
triples matter, so each stage tracks minimal end positions and minimal
diameters rather than explicit subsets.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .coloring import Coloring, IntSet
from .errors import FlaggedStateError, OracleCapError

__all__ = [
    "ProblemSpec",
    "Witness",
    "validate_witness",
    "exists_solution",
    "brute_force_exists",
    "min_max_feasible",
    "IncrementalState",
    "checker_state_extend",
    "DEFAULT_ORACLE_CAP",
]

# Forward DP sentinel: "no set of this stage ends at or before here".
_INF = 1 << 40
# Suffix DP sentinels: "no feasible chain" / "no constraint".
_NEG = -(1 << 40)
_POS = 1 << 40

DEFAULT_ORACLE_CAP = 20


@dataclass(frozen=True)
class ProblemSpec:
    """The problem instance: set sizes, color count, and diameter mode.

    sizes holds (m1, ..., mt) with every mi >= 2; num_colors is r >= 2;
    strict selects strictly increasing diameters instead of nondecreasing.
    """

    sizes: tuple[int, ...]
    num_colors: int
    strict: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if len(self.sizes) < 1:
            raise ValueError("need at least one set size")
        for m in self.sizes:
            if m < 2:
                raise ValueError(f"set sizes must be at least 2, got {m}")
        if self.num_colors < 2:
            raise ValueError(f"need at least 2 colors, got {self.num_colors}")

    @property
    def t(self) -> int:
        return len(self.sizes)

    def label(self) -> str:
        """Display form such as "f(2,2,2;2)" or "f*(2,2;4)"."""
        name = "f*" if self.strict else "f"
        return f"{name}({','.join(map(str, self.sizes))};{self.num_colors})"

    def to_json(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "num_colors": self.num_colors,
            "strict": self.strict,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProblemSpec":
        return cls(
            sizes=tuple(data["sizes"]),
            num_colors=data["num_colors"],
            strict=bool(data.get("strict", False)),
        )


@dataclass(frozen=True)
class Witness:
    """A solution chain: the sets in order plus the color of each set."""

    sets: tuple[IntSet, ...]
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sets) != len(self.colors):
            raise ValueError("one color per set required")

    @property
    def diams(self) -> tuple[int, ...]:
        return tuple(s.max - s.min for s in self.sets)

    def to_json(self) -> dict:
        return {
            "sets": [list(s.elements) for s in self.sets],
            "colors": list(self.colors),
            "diams": list(self.diams),
        }


def validate_witness(w: Witness, c: Coloring, spec: ProblemSpec) -> None:
    """Re-check a witness against the raw definition, raising on failure.

    Deliberately shares no code with the solver engines: works straight
    from the chain conditions so it can serve as an independent referee.
    """
    if len(w.sets) != spec.t:
        raise ValueError(f"expected {spec.t} sets, got {len(w.sets)}")
    for idx, (s, k) in enumerate(zip(w.sets, w.colors)):
        if len(s) != spec.sizes[idx]:
            raise ValueError(
                f"set {idx + 1} has {len(s)} elements, "
                f"expected {spec.sizes[idx]}"
            )
        if s.max > c.length:
            raise ValueError(f"set {idx + 1} leaves the interval [1,{c.length}]")
        for p in s:
            if c.color_at(p) != k:
                raise ValueError(
                    f"set {idx + 1} is not monochromatic of color {k} "
                    f"(position {p} has color {c.color_at(p)})"
                )
    for idx in range(spec.t - 1):
        if not w.sets[idx].max < w.sets[idx + 1].min:
            raise ValueError(f"set {idx + 1} does not precede set {idx + 2}")
        d0 = w.sets[idx].max - w.sets[idx].min
        d1 = w.sets[idx + 1].max - w.sets[idx + 1].min
        if spec.strict:
            if not d0 < d1:
                raise ValueError(
                    f"diameters must strictly increase: {d0} !< {d1}"
                )
        elif not d0 <= d1:
            raise ValueError(f"diameters must not decrease: {d0} !<= {d1}")


# ======================================================================
# polynomial existence check + canonical witness
# ======================================================================

def _suffix_table(
    c: Coloring, spec: ProblemSpec
) -> tuple[list[list[int]], list[tuple[int, ...]], list[int]]:
    """Build S[s][p] = max diam(B_s) over chains of stages s..t in [p, N].

    S[s][p] is _NEG when no such chain exists and the row s = t+1 is _POS
    (no constraint). Also returns the per-color position lists and the
    rank of each position within its color class.
    """
    digits = c.digits
    n = len(digits)
    t = spec.t
    pos = [c.positions_of(k) for k in range(spec.num_colors)]
    rank = [0] * (n + 1)
    for k in range(spec.num_colors):
        for idx, p in enumerate(pos[k]):
            rank[p] = idx

    off = 1 if spec.strict else 0
    S = [[_NEG] * (n + 3) for _ in range(t + 2)]
    S[t + 1] = [_POS] * (n + 3)
    for s in range(t, 0, -1):
        ms = spec.sizes[s - 1]
        nxt = S[s + 1]
        cur = S[s]
        off_next = off if s < t else 0
        for p in range(n, 0, -1):
            best = cur[p + 1]
            k = digits[p - 1]
            L = pos[k]
            i0 = rank[p]
            if i0 + ms - 1 < len(L):
                # Smallest usable end for a stage-s set starting at p.
                jb = L[i0 + ms - 1]
                # Largest end j whose remaining interval still supports
                # the later stages: g(j) = j - S[s+1][j+1] is increasing
                # in j, so binary search for g(j) <= p - off_next.
                lo, hi = jb, n
                j_cap = None
                while lo <= hi:
                    mid = (lo + hi) // 2
                    gs = nxt[mid + 1]
                    if gs >= _POS or mid - gs <= p - off_next:
                        j_cap = mid
                        lo = mid + 1
                    else:
                        hi = mid - 1
                if j_cap is not None:
                    idx = bisect.bisect_right(L, j_cap) - 1
                    if idx >= 0 and L[idx] >= jb:
                        d = L[idx] - p
                        if d > best:
                            best = d
            cur[p] = best
    return S, pos, rank


def exists_solution(c: Coloring, spec: ProblemSpec) -> Witness | None:
    """Return the canonical witness if the coloring contains a solution.

    The canonical witness minimizes (max B1, diam B1, max B2, diam B2, ...)
    lexicographically; at equal (max, diam) the color is forced (it is the
    color of the max position) and the remaining elements are the smallest
    available ones. Runs in O(t * N log N) plus table setup, never by
    subset enumeration.

    Args:
        c: the coloring to check; c.num_colors must equal spec.num_colors.
        spec: the problem instance.

    Returns:
        The canonical Witness, or None when the coloring avoids solutions.
    """
    if c.num_colors != spec.num_colors:
        raise ValueError(
            f"coloring has {c.num_colors} colors, spec wants {spec.num_colors}"
        )
    S, pos, rank = _suffix_table(c, spec)
    if S[1][1] < 0:
        return None

    digits = c.digits
    n = len(digits)
    off = 1 if spec.strict else 0
    sets: list[IntSet] = []
    set_colors: list[int] = []
    prev_e, prev_d = 0, 0
    for s in range(1, spec.t + 1):
        ms = spec.sizes[s - 1]
        req = prev_d + off if s >= 2 else 0
        found: tuple[int, int, int] | None = None
        for e in range(prev_e + 1, n + 1):
            k = digits[e - 1]
            L = pos[k]
            ei = rank[e]
            if ei + 1 < ms:
                continue
            # Start must leave >= ms color-k elements in [i, e], keep the
            # diameter >= req, stay past the previous set, and leave the
            # later stages feasible.
            hi = min(L[ei + 1 - ms], e - req)
            lo = prev_e + 1
            if s < spec.t:
                lim = S[s + 1][e + 1]
                if lim < 0:
                    continue
                if lim < _POS:
                    lo = max(lo, e - lim + off)
            if hi < lo:
                continue
            idx = bisect.bisect_right(L, hi) - 1
            if idx >= 0 and L[idx] >= lo:
                found = (e, L[idx], k)
                break
        assert found is not None, "suffix table promised feasibility"
        e, i, k = found
        members = [i]
        for q in pos[k]:
            if i < q < e and len(members) < ms - 1:
                members.append(q)
        members.append(e)
        sets.append(IntSet(members))
        set_colors.append(k)
        prev_e, prev_d = e, e - i
    return Witness(sets=tuple(sets), colors=tuple(set_colors))


def min_max_feasible(
    c: Coloring, start: int, min_diam: int, m: int
) -> tuple[int, int] | None:
    """Smallest end of a monochromatic m-set in [start, N] with diam >= d.

    Returns (end, achieved_diam) where end is the minimal possible max of
    such a set and achieved_diam the minimal diameter among sets attaining
    that end; None when no set qualifies.
    """
    if not 1 <= start <= c.length:
        raise ValueError(f"start {start} outside [1, {c.length}]")
    if min_diam < 0:
        raise ValueError(f"min_diam must be >= 0, got {min_diam}")
    if m < 2:
        raise ValueError(f"set size must be >= 2, got {m}")
    best: tuple[int, int] | None = None
    for k in range(c.num_colors):
        whole = c.positions_of(k)
        L = whole[bisect.bisect_left(whole, start):]
        for ji in range(m - 1, len(L)):
            j = L[ji]
            cap = min(L[ji - m + 1], j - min_diam)
            idx = bisect.bisect_right(L, cap) - 1
            if idx >= 0:
                cand = (j, j - L[idx])
                if best is None or cand < best:
                    best = cand
                break  # later ends of this color cannot beat (j, *)
    return best


# ======================================================================
# brute-force reference oracle
# ======================================================================

def brute_force_exists(
    c: Coloring, spec: ProblemSpec, cap: int = DEFAULT_ORACLE_CAP
) -> Witness | None:
    """Existence by direct backtracking over candidate chains.

    Intended for testing only: refuses colorings longer than `cap`. Each
    candidate set is described by its (min, max, color) triple, which is
    lossless for existence since any monochromatic m-set shrinks to one
    with the same min, max, and color. The returned witness is the first
    one found in scan order, with no canonicality promise.
    """
    if c.length > cap:
        raise OracleCapError(
            f"oracle capped at N <= {cap}, got N = {c.length}"
        )
    if c.num_colors != spec.num_colors:
        raise ValueError(
            f"coloring has {c.num_colors} colors, spec wants {spec.num_colors}"
        )
    pos = [c.positions_of(k) for k in range(spec.num_colors)]
    off = 1 if spec.strict else 0
    t = spec.t
    chain: list[tuple[int, int, int]] = []

    def rec(stage: int, lo: int, need: int) -> bool:
        if stage == t:
            return True
        m = spec.sizes[stage]
        for k in range(spec.num_colors):
            L = pos[k]
            for ai, i in enumerate(L):
                if i < lo:
                    continue
                for aj in range(ai + m - 1, len(L)):
                    j = L[aj]
                    if j - i < need:
                        continue
                    chain.append((i, j, k))
                    if rec(stage + 1, j + 1, j - i + off):
                        return True
                    chain.pop()
        return False

    if not rec(0, 1, 0):
        return None
    sets = []
    for stage, (i, j, k) in enumerate(chain):
        members = [i]
        for q in pos[k]:
            if i < q < j and len(members) < spec.sizes[stage] - 1:
                members.append(q)
        members.append(j)
        sets.append(IntSet(members))
    return Witness(
        sets=tuple(sets), colors=tuple(k for _i, _j, k in chain)
    )


# ======================================================================
# incremental interface for the search engine
# ======================================================================

class IncrementalState:
    """Forward solution check maintained while a coloring grows.

    Keeps M[s][p] = minimal diam(B_s) over chains of stages 1..s inside
    [1, p], for the prefix built so far. Appending one position updates
    every stage; the prefix contains a solution exactly when M[t][p] is
    finite, at which point the state is flagged and must not be extended
    further (retract first).

    Single-owner by design: extend and retract mutate in place. Use
    clone() when branching without retraction.
    """

    __slots__ = (
        "spec", "_digits", "_pos", "_m", "_first_finite", "_flagged"
    )

    def __init__(self, spec: ProblemSpec) -> None:
        self.spec = spec
        self._digits: list[int] = []
        self._pos: list[list[int]] = [[] for _ in range(spec.num_colors)]
        # _m[s][p] for p = 0..len; stage 0 is identically 0.
        self._m: list[list[int]] = [
            [0] if s == 0 else [_INF] for s in range(spec.t + 1)
        ]
        # First position where stage s became satisfiable, _INF if never;
        # lets the stage update skip start candidates that cannot work.
        self._first_finite: list[int] = [0] + [_INF] * spec.t
        self._flagged = False

    @property
    def length(self) -> int:
        return len(self._digits)

    @property
    def flagged(self) -> bool:
        return self._flagged

    def coloring(self) -> Coloring:
        """The prefix built so far as an immutable Coloring."""
        return Coloring(self._digits, self.spec.num_colors)

    def clone(self) -> "IncrementalState":
        other = IncrementalState.__new__(IncrementalState)
        other.spec = self.spec
        other._digits = list(self._digits)
        other._pos = [list(row) for row in self._pos]
        other._m = [list(row) for row in self._m]
        other._first_finite = list(self._first_finite)
        other._flagged = self._flagged
        return other

    def extend(self, color: int) -> bool:
        """Append one position; returns True when a solution now exists."""
        if self._flagged:
            raise FlaggedStateError(
                "state already contains a solution; retract before extending"
            )
        if not 0 <= color < self.spec.num_colors:
            raise ValueError(
                f"color {color} out of range 0..{self.spec.num_colors - 1}"
            )
        sizes = self.spec.sizes
        strict = self.spec.strict
        p = len(self._digits) + 1
        self._digits.append(color)
        self._pos[color].append(p)
        self._m[0].append(0)
        Lx = self._pos[color]
        have = len(Lx)
        for s in range(1, self.spec.t + 1):
            ms = sizes[s - 1]
            row = self._m[s]
            best = row[p - 1]
            if have >= ms:
                cb_idx = have - ms
                if s == 1:
                    # No chain constraint: the largest feasible start wins.
                    i = Lx[cb_idx]
                    if p - i < best:
                        best = p - i
                else:
                    off = 1 if strict else 0
                    prev_row = self._m[s - 1]
                    # Starts at or below `lo` cannot improve on `best` or
                    # cannot host a finished prefix chain.
                    lo = max(p - best, self._first_finite[s - 1])
                    idx = cb_idx
                    while idx >= 0:
                        i = Lx[idx]
                        if i <= lo:
                            break
                        if prev_row[i - 1] + off <= p - i:
                            best = p - i
                            break
                        idx -= 1
            row.append(best)
            if best < _INF and self._first_finite[s] == _INF:
                self._first_finite[s] = p
        if self._m[self.spec.t][p] < _INF:
            self._flagged = True
        return self._flagged

    def retract(self) -> None:
        """Remove the last position, undoing the matching extend."""
        if not self._digits:
            raise ValueError("cannot retract an empty state")
        p = len(self._digits)
        color = self._digits.pop()
        self._pos[color].pop()
        for s in range(self.spec.t + 1):
            self._m[s].pop()
            if self._first_finite[s] == p:
                self._first_finite[s] = _INF
        self._flagged = False


def checker_state_extend(
    state: IncrementalState, next_color: int
) -> tuple[IncrementalState, bool]:
    """Extend a state by one position, returning it with the solution flag.

    Mutates and returns the same state object (single-owner contract);
    clone() first when the unextended state must survive.
    """
    flag = state.extend(next_color)
    return state, flag
