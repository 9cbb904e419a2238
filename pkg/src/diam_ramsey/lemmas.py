"""Executable structure checks for 2-colorings of [1, 3m-2].

Everything here revolves around the extremal big set of a coloring: a
monochromatic m-set with diameter at least 2m-2 chosen to minimize
(max, diam) lexicographically. Writing max = 3m-2-beta and
diam = 2m-2+alpha, the window R = [1, 3m-2-beta] around it is tightly
constrained:

* lemma 2.1: Delta restricted to R, re-read so the big set's color is
  called 1, matches one of three explicit run patterns (cases i/ii/iii);
* lemma 2.2: further monochromatic m-sets with small diameters exist
  inside prefixes of R (and when no big set exists at all, two disjoint
  constant runs of length m do).

The validators either produce the promised structure or raise
LemmaViolationError, so sweeping all 2^(3m-2) colorings machine-checks
both statements. Case frequencies from the sweeps feed the CLI histogram.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from multiprocessing import Pool

from .coloring import Coloring, IntSet, format_run_string
from .errors import LemmaViolationError

__all__ = [
    "ExtremalB1",
    "Lemma21Case",
    "Lemma22Finding",
    "LemmaSweepReport",
    "find_extremal_b1",
    "classify_lemma21",
    "check_lemma22",
    "sweep_lemmas",
]


@dataclass(frozen=True)
class ExtremalB1:
    """The extremal big set and its window offsets.

    beta is how far max(b1) sits below 3m-2; alpha is the diameter excess
    over 2m-2. tie records whether the other color reaches the same
    (max, diam) pair; the winner is then color 0 by convention.
    """

    b1: IntSet
    color_c1: int
    beta: int
    alpha: int
    tie: bool


@dataclass(frozen=True)
class Lemma21Case:
    """Which structural case the window matches.

    case_tag is the first match in the order (i), (ii), (iii); mask lists
    every case that matches (the cases overlap). mu and nu are the run
    parameters of case (i), 0 when the tag is a different case. h_strings
    holds the variable substrings of the matched pattern as
    (name, relabeled digits, (start, end)) with 1-based positions in R;
    an empty substring carries (start, start-1).
    """

    case_tag: str
    mask: tuple[str, ...]
    mu: int
    nu: int
    h_strings: tuple[tuple[str, str, tuple[int, int]], ...]


@dataclass(frozen=True)
class Lemma22Finding:
    """The sets promised by lemma 2.2 for one coloring."""

    branch: str  # "no_big_set" | "big_set"
    d1: IntSet | None = None
    d2: IntSet | None = None
    a1: IntSet | None = None
    a2: IntSet | None = None
    a3: IntSet | None = None


def _require_window(c: Coloring, m: int) -> None:
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if c.num_colors != 2:
        raise ValueError(f"expected a 2-coloring, got {c.num_colors} colors")
    if c.length != 3 * m - 2:
        raise ValueError(
            f"expected a coloring of [1, {3 * m - 2}] for m = {m}, "
            f"got length {c.length}"
        )


def _color_extremal(c: Coloring, m: int, k: int) -> tuple[int, int] | None:
    """Minimal (max, diam) of a color-k m-set with diam >= 2m-2, or None."""
    L = c.positions_of(k)
    for ji in range(m - 1, len(L)):
        j = L[ji]
        cap = min(L[ji - m + 1], j - (2 * m - 2))
        idx = bisect.bisect_right(L, cap) - 1
        if idx >= 0:
            return (j, j - L[idx])
    return None


def find_extremal_b1(c: Coloring, m: int) -> ExtremalB1 | None:
    """The big set minimizing (max, diam), or None when no big set exists.

    Ties between the two colors go to color 0 and are flagged. The
    returned set is the deterministic representative: its minimum, then
    the smallest positions of the winning color, then its maximum.
    """
    _require_window(c, m)
    r0 = _color_extremal(c, m, 0)
    r1 = _color_extremal(c, m, 1)
    if r0 is None and r1 is None:
        return None
    if r1 is None or (r0 is not None and r0 <= r1):
        j, d = r0
        color = 0
    else:
        j, d = r1
        color = 1
    i = j - d
    members = [i]
    for q in c.positions_of(color):
        if i < q < j and len(members) < m - 1:
            members.append(q)
    members.append(j)
    return ExtremalB1(
        b1=IntSet(members),
        color_c1=color,
        beta=(3 * m - 2) - j,
        alpha=d - (2 * m - 2),
        tie=r0 == r1,
    )


# ======================================================================
# case matching (all in the frame where the big set's color reads as 1)
# ======================================================================

def _frame(c: Coloring, m: int, beta: int, k: int) -> tuple[int, ...]:
    """Delta(R) with color k relabeled to 1, R = [1, 3m-2-beta]."""
    return tuple(
        1 if c.digits[x] == k else 0 for x in range(3 * m - 2 - beta)
    )


def _match_case_i(
    s: tuple[int, ...], m: int, beta: int, alpha: int
) -> tuple[int, int] | None:
    """First (nu, mu) decomposing s as 1^(m-1-beta-nu) H0 0 H1 1^(1+nu)."""
    r_len = len(s)
    if beta > m - 2:
        return None
    if s.count(0) < m:
        return None
    for nu in range(0, m - beta):
        pre = m - 1 - beta - nu
        if pre < 0:
            continue
        for mu in range(0, m - alpha):
            if not (beta == m - 1 - alpha or (nu == 0 and mu == 0)):
                continue
            h0_len = m - 1 + beta - mu
            h1_len = m - 2 - beta + mu
            if h0_len < 0 or h1_len < 0:
                continue
            assert pre + h0_len + 1 + h1_len + 1 + nu == r_len
            if any(x != 1 for x in s[:pre]):
                continue
            if s[pre + h0_len] != 0:
                continue
            if any(x != 1 for x in s[r_len - 1 - nu:]):
                continue
            h0 = s[pre : pre + h0_len]
            h1 = s[pre + h0_len + 1 : pre + h0_len + 1 + h1_len]
            if sum(h0) != m - 1 - alpha - mu:
                continue
            if sum(h1) != mu:
                continue
            return (nu, mu)
    return None


def _match_case_ii(s: tuple[int, ...], m: int, beta: int, alpha: int) -> bool:
    """Does s read as 0^(m-alpha-beta-1) 1 H2 1^(m-beta) with the side counts?"""
    if not (beta < m - 1 - alpha or beta == m - 1):
        return False
    r_len = len(s)
    zeros = m - alpha - beta - 1
    h2_len = m - 2 + beta + alpha
    assert zeros + 1 + h2_len + (m - beta) == r_len
    if any(x != 0 for x in s[:zeros]):
        return False
    if s[zeros] != 1:
        return False
    if any(x != 1 for x in s[r_len - (m - beta):]):
        return False
    if beta <= m - 2 and s.count(0) < m:
        return False
    if alpha > 0:
        h2 = s[zeros + 1 : zeros + 1 + h2_len]
        if beta < 1 or sum(h2) != beta - 1:
            return False
    return True


def _match_case_iii(s: tuple[int, ...], m: int, beta: int, alpha: int) -> bool:
    """Few zeros overall: the first m ones sit early with few zeros between."""
    if beta < alpha:
        return False
    if s.count(0) >= m:
        return False
    ones = [x + 1 for x, v in enumerate(s) if v == 1]
    if len(ones) < m:
        return False
    if ones[m - 1] > 3 * m - 3 - beta - alpha:
        return False
    zeros_between = sum(
        1 for x in range(ones[0], ones[m - 1] + 1) if s[x - 1] == 0
    )
    return zeros_between <= beta


def _mask_for_frame(
    s: tuple[int, ...], m: int, beta: int, alpha: int
) -> tuple[tuple[str, ...], tuple[int, int] | None]:
    mask: list[str] = []
    numu = _match_case_i(s, m, beta, alpha)
    if numu is not None:
        mask.append("i")
    if _match_case_ii(s, m, beta, alpha):
        mask.append("ii")
    if _match_case_iii(s, m, beta, alpha):
        mask.append("iii")
    return tuple(mask), numu


def _substrings_for(
    s: tuple[int, ...], m: int, beta: int, alpha: int,
    tag: str, numu: tuple[int, int] | None,
) -> tuple[tuple[str, str, tuple[int, int]], ...]:
    def cut(name: str, start: int, length: int):
        digits = "".join(str(x) for x in s[start - 1 : start - 1 + length])
        return (name, digits, (start, start + length - 1))

    if tag == "i":
        nu, mu = numu
        pre = m - 1 - beta - nu
        h0_len = m - 1 + beta - mu
        h1_len = m - 2 - beta + mu
        return (
            cut("H0", pre + 1, h0_len),
            cut("H1", pre + h0_len + 2, h1_len),
        )
    if tag == "ii":
        zeros = m - alpha - beta - 1
        h2_len = m - 2 + beta + alpha
        return (cut("H2", zeros + 2, h2_len),)
    return ()


def classify_lemma21(c: Coloring, b1: ExtremalB1) -> Lemma21Case:
    """Match the window of an extremal big set against the three cases.

    The frame relabels colors so that b1's color reads as 1. On a tie both
    relabelings are admissible and at least one must classify. The tag is
    the first matching case in the order (i), (ii), (iii); the mask is the
    union of matches over the admissible frames.

    Raises:
        LemmaViolationError: no case matches any admissible frame. This
            would falsify the statement being validated and must abort
            loudly.
    """
    m = len(b1.b1)
    _require_window(c, m)
    beta, alpha = b1.beta, b1.alpha
    frames = [b1.color_c1]
    if b1.tie:
        frames.append(1 - b1.color_c1)
    per_frame: list[tuple[tuple[str, ...], tuple[int, int] | None, int]] = []
    union: list[str] = []
    for k in frames:
        s = _frame(c, m, beta, k)
        mask, numu = _mask_for_frame(s, m, beta, alpha)
        per_frame.append((mask, numu, k))
        for tag in mask:
            if tag not in union:
                union.append(tag)
    union.sort(key=("i", "ii", "iii").index)
    if not union:
        raise LemmaViolationError(
            f"no structural case matches {format_run_string(c)} "
            f"(m={m}, beta={beta}, alpha={alpha})",
            coloring=c,
            clause="lemma 2.1: disjunction (i)/(ii)/(iii)",
        )
    tag = union[0]
    mask_u, numu_u, use_k = next(
        (mk, nm, k) for mk, nm, k in per_frame if tag in mk
    )
    nu, mu = numu_u if (tag == "i" and numu_u is not None) else (0, 0)
    s_use = _frame(c, m, beta, use_k)
    return Lemma21Case(
        case_tag=tag,
        mask=tuple(union),
        mu=mu,
        nu=nu,
        h_strings=_substrings_for(s_use, m, beta, alpha, tag, numu_u),
    )


# ======================================================================
# lemma 2.2: promised small-diameter sets
# ======================================================================

def _constant_runs(c: Coloring, m: int) -> list[int]:
    """Start positions of runs of m consecutive equally colored positions."""
    digits = c.digits
    n = len(digits)
    return [
        s
        for s in range(1, n - m + 2)
        if all(digits[x] == digits[s - 1] for x in range(s, s + m - 1))
    ]


def _min_diam_mset(
    c: Coloring, m: int, limit: int
) -> tuple[IntSet, int] | None:
    """A monochromatic m-set within [1, limit] of minimal diameter.

    Ties resolve toward the smaller maximum, then the smaller color, so
    the returned set is deterministic.
    """
    best: tuple[int, int, int, int] | None = None  # (diam, max, color, start_idx)
    for k in (0, 1):
        whole = c.positions_of(k)
        L = whole[: bisect.bisect_right(whole, limit)]
        for a in range(len(L) - m + 1):
            d = L[a + m - 1] - L[a]
            key = (d, L[a + m - 1], k, a)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    d, _mx, k, a = best
    L = c.positions_of(k)
    return IntSet(L[a : a + m]), d


def check_lemma22(c: Coloring, m: int) -> Lemma22Finding:
    """Produce the sets lemma 2.2 promises, or raise LemmaViolationError.

    Without a big set the promise is two disjoint constant runs of length
    m (diameter exactly m-1). With a big set it is monochromatic m-sets of
    bounded diameter inside [1, 3m-2-alpha-beta]; which bounds apply
    depends on the lemma 2.1 cases the coloring matches, read from the
    full case mask.
    """
    _require_window(c, m)
    ext = find_extremal_b1(c, m)
    if ext is None:
        runs = _constant_runs(c, m)
        d1_start = runs[0] if runs else None
        d2_start = next(
            (s for s in runs if d1_start is not None and s >= d1_start + m),
            None,
        )
        if d1_start is None or d2_start is None:
            raise LemmaViolationError(
                f"no big set in {format_run_string(c)}, yet no two disjoint "
                f"constant runs of length {m} exist",
                coloring=c,
                clause="lemma 2.2: no_big_set branch",
            )
        return Lemma22Finding(
            branch="no_big_set",
            d1=IntSet(range(d1_start, d1_start + m)),
            d2=IntSet(range(d2_start, d2_start + m)),
        )

    case = classify_lemma21(c, ext)
    alpha, beta = ext.alpha, ext.beta
    limit = 3 * m - 2 - alpha - beta
    bound_a1 = 2 * m - 2 - alpha
    if "iii" in case.mask or (alpha >= 1 and "ii" in case.mask):
        bound_a1 = min(bound_a1, m - 1 + beta)
    if "i" in case.mask:
        bound_a1 = min(bound_a1, 2 * m - 2 - alpha - case.mu)
    bound_a2 = m + (m - 1 + beta) // 2 - 1

    found = _min_diam_mset(c, m, limit)
    if found is None or found[1] > bound_a1 or found[1] > bound_a2:
        got = "none" if found is None else str(found[1])
        raise LemmaViolationError(
            f"minimal monochromatic {m}-set diameter within [1,{limit}] is "
            f"{got}, exceeding a bound (A1 <= {bound_a1}, A2 <= {bound_a2}) "
            f"for {format_run_string(c)}",
            coloring=c,
            clause="lemma 2.2: big_set diameter bounds",
        )
    a_set = found[0]

    a3: IntSet | None = None
    if "i" in case.mask:
        inner = _min_diam_mset(c, m, m + alpha + beta)
        if inner is None or inner[1] > m + alpha + beta - 1:
            raise LemmaViolationError(
                f"case (i) promises a monochromatic {m}-set within "
                f"[1,{m + alpha + beta}] of diameter <= {m + alpha + beta - 1} "
                f"for {format_run_string(c)}",
                coloring=c,
                clause="lemma 2.2: big_set A3 bound",
            )
        a3 = inner[0]

    return Lemma22Finding(branch="big_set", a1=a_set, a2=a_set, a3=a3)


# ======================================================================
# exhaustive sweeps
# ======================================================================

@dataclass
class LemmaSweepReport:
    m: int
    total: int
    case_counts: dict[str, int]    # no_b1 / i / ii / iii (first-match tags)
    branch_counts: dict[str, int]  # no_big_set / big_set
    ties: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "total": self.total,
            "case_counts": dict(self.case_counts),
            "branch_counts": dict(self.branch_counts),
            "ties": self.ties,
        }


def _sweep_range(args: tuple[int, int, int]) -> tuple[dict, dict, int]:
    m, lo, hi = args
    n = 3 * m - 2
    case_counts = {"no_b1": 0, "i": 0, "ii": 0, "iii": 0}
    branch_counts = {"no_big_set": 0, "big_set": 0}
    ties = 0
    for bits in range(lo, hi):
        digits = [(bits >> x) & 1 for x in range(n)]
        c = Coloring(digits, 2)
        ext = find_extremal_b1(c, m)
        if ext is None:
            case_counts["no_b1"] += 1
        else:
            if ext.tie:
                ties += 1
            case_counts[classify_lemma21(c, ext).case_tag] += 1
        finding = check_lemma22(c, m)
        branch_counts[finding.branch] += 1
    return case_counts, branch_counts, ties


def sweep_lemmas(m: int, workers: int = 1) -> LemmaSweepReport:
    """Validate both lemmas over every 2-coloring of [1, 3m-2].

    Any violation raises LemmaViolationError out of this function; a
    returned report therefore certifies zero violations and carries the
    case and branch frequencies.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    n = 3 * m - 2
    total = 1 << n
    case_counts = {"no_b1": 0, "i": 0, "ii": 0, "iii": 0}
    branch_counts = {"no_big_set": 0, "big_set": 0}
    ties = 0
    if workers == 1:
        chunks = [(m, 0, total)]
        results = map(_sweep_range, chunks)
    else:
        step = max(1, total // (workers * 8))
        chunks = [
            (m, lo, min(lo + step, total)) for lo in range(0, total, step)
        ]
        pool = Pool(workers)
        try:
            results = list(pool.imap_unordered(_sweep_range, chunks))
        finally:
            pool.close()
            pool.join()
    for cc, bc, tt in results:
        for key, val in cc.items():
            case_counts[key] += val
        for key, val in bc.items():
            branch_counts[key] += val
        ties += tt
    return LemmaSweepReport(
        m=m,
        total=total,
        case_counts=case_counts,
        branch_counts=branch_counts,
        ties=ties,
    )
