"""Almost-diagonal (banded) Toeplitz matrices: construction from the
row/column prefix description, determinant and permanent sequences, and
their generating functions by two independent routes.

A family is given by the first k1 entries of the first row and the first
k2 entries of the first column (shared corner entry).  The entry on
diagonal offset o = column - row is

    d(o) = row[o]   for 0 <= o < k1,
    d(o) = col[-o]  for -k2 < o < 0,
    d(o) = 0        otherwise.

Route one guesses a recurrence from a window of exactly computed values.
Route two expands recursively along the first row and observes that every
minor that can ever appear is described, dimension-independently, by the
set of diagonal offsets of its surviving columns inside the window
(-k2, k1): exactly k2 - 1 columns are missing from that window, all other
columns are intact.  Cofactor expansion acts on those offset patterns by
delete-shift-refill, the pattern space is finite, and the resulting linear
system over rational functions in t yields the generating function without
guessing.  States are keyed by offset pattern (not by entry values), so
families with repeated values are handled correctly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    LinearSolution,
    Matrix,
    Poly,
    RationalFunction,
    det_bareiss,
    solve_linear,
    taylor_coeffs,
)
from .errors import (
    BadState,
    BudgetExceeded,
    InconsistentSpec,
    NoFitWithinBudget,
    SchemeExplosion,
    SingularTransferSystem,
)
from .cfinite import guess_rec

#: Largest dimension the exponential permanent oracle will accept.
PERMANENT_ORACLE_CAP = 20


@dataclass(frozen=True)
class ToeplitzSpec:
    """Dimension plus first-row and first-column prefixes."""

    n: int
    row: tuple
    col: tuple

    def __post_init__(self):
        object.__setattr__(self, "row", tuple(self.row))
        object.__setattr__(self, "col", tuple(self.col))
        if not self.row or not self.col:
            raise InconsistentSpec("prefixes must be nonempty")
        if self.row[0] != self.col[0]:
            raise InconsistentSpec("row and column prefixes must share entry (1,1)")
        if self.n < 1:
            raise ValueError("dimension must be positive")


def matrix_from_spec(spec: ToeplitzSpec) -> Matrix:
    """The n x n matrix with the given diagonal stencil."""
    n, row, col = spec.n, spec.row, spec.col
    k1, k2 = len(row), len(col)
    rows = []
    for i in range(n):
        r = []
        for j in range(n):
            o = j - i
            if 0 <= o < k1:
                r.append(row[o])
            elif 0 < -o < k2:
                r.append(col[-o])
            else:
                r.append(0)
        rows.append(r)
    return Matrix(rows)


# ---------------------------------------------------------------------------
# permanents
# ---------------------------------------------------------------------------

def ryser_permanent(m: Matrix):
    """Permanent by Ryser's inclusion-exclusion with Gray-code updates.

    Exponential in the dimension; callers cap it (see value_sequence)."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("permanent needs a square matrix")
    if n == 0:
        return 1
    rows = m.rows
    sums = [0] * n
    total = 0
    gray = 0
    bits = 0
    for s in range(1, 1 << n):
        new_gray = s ^ (s >> 1)
        j = (gray ^ new_gray).bit_length() - 1
        if new_gray & (1 << j):
            for i in range(n):
                sums[i] += rows[i][j]
            bits += 1
        else:
            for i in range(n):
                sums[i] -= rows[i][j]
            bits -= 1
        gray = new_gray
        prod = 1
        for x in sums:
            prod *= x
            if not prod:
                break
        if prod:
            total += -prod if bits & 1 else prod
    return -total if n & 1 else total


# ---------------------------------------------------------------------------
# value sequences and the guessing route
# ---------------------------------------------------------------------------

def value_sequence(row, col, mode: str, count: int, method: str = "oracle"):
    """[f(A_1), ..., f(A_count)] where f is det or perm.

    Determinants always go through exact elimination.  Permanents use the
    inclusion-exclusion oracle up to dimension 20 (BudgetExceeded beyond
    that, pointing at method="transfer", which expands the transfer
    generating function instead)."""
    if mode not in ("det", "perm"):
        raise ValueError("mode must be 'det' or 'perm'")
    if count < 1:
        raise ValueError("count must be positive")
    if method == "transfer":
        gf = gf_transfer(row, col, mode)
        return taylor_coeffs(gf, count + 1)[1:]
    if method != "oracle":
        raise ValueError("method must be 'oracle' or 'transfer'")
    if mode == "perm" and count > PERMANENT_ORACLE_CAP:
        raise BudgetExceeded(
            f"permanent oracle is capped at n={PERMANENT_ORACLE_CAP}; "
            f"use method='transfer'"
        )
    out = []
    for n in range(1, count + 1):
        m = matrix_from_spec(ToeplitzSpec(n, row, col))
        out.append(det_bareiss(m) if mode == "det" else ryser_permanent(m))
    return out


def gf_family_guess(row, col, mode: str, fit_start: int = 10,
                    fit_end: int = 50) -> RationalFunction:
    """Generating function 1 + sum(f(A_n) t^n) fitted on the window
    [fit_start, fit_end] of exactly computed values.

    The numerator is the denominator times the data series truncated at
    the denominator degree; the result is checked against every computed
    term (constant term 1 for the empty matrix)."""
    if not 1 <= fit_start < fit_end:
        raise ValueError("need 1 <= fit_start < fit_end")
    data = value_sequence(row, col, mode, fit_end)
    window = data[fit_start - 1:]
    spec = guess_rec(window)
    if spec is None:
        raise NoFitWithinBudget(
            f"no recurrence found on window {fit_start}..{fit_end}", data
        )
    den = Poly([1] + [-Fraction(r) for r in spec.rec])
    full = Poly([1] + list(data))
    num = (den * full).truncate(int(den.degree) + 1)
    rf = RationalFunction(num, den)
    series = taylor_coeffs(rf, fit_end + 1)
    expected = [1] + list(data)
    if series != [Fraction(x) for x in expected]:
        raise NoFitWithinBudget(
            "window recurrence does not extend to the whole sequence", data
        )
    return rf


# ---------------------------------------------------------------------------
# the transfer route: minor states and their closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinorState:
    """A minor's identity under recursive first-row expansion.

    offsets are the diagonal offsets of the window columns still present,
    relative to the minor's first row; row and col are the entry prefixes
    (up to the last nonzero entry) they induce, which is the human-readable
    form.  Equality is structural (by offsets)."""

    offsets: tuple
    row: tuple
    col: tuple


class TransferScheme:
    """Closed set of minor states plus signed, t-weighted transitions.

    states[0] is the root (the full matrix).  transitions[i] lists
    (coefficient, target_index) pairs for state i; coefficients carry the
    cofactor signs in det mode and are unsigned in perm mode."""

    __slots__ = ("row", "col", "mode", "states", "transitions")

    def __init__(self, row, col, mode, states, transitions):
        self.row = tuple(row)
        self.col = tuple(col)
        self.mode = mode
        self.states = tuple(states)
        self.transitions = tuple(tuple(t) for t in transitions)

    def __len__(self):
        return len(self.states)


def _diag_value(row, col, o: int):
    if 0 <= o < len(row):
        return row[o]
    if 0 < -o < len(col):
        return col[-o]
    return 0


def _state_from_offsets(row, col, offsets) -> MinorState:
    offsets = tuple(sorted(offsets))
    vals = [_diag_value(row, col, o) for o in offsets]
    while vals and not vals[-1]:
        vals.pop()
    row_prefix = tuple(vals)
    k2 = len(col)
    col_vals = []
    if offsets:
        first = offsets[0]
        s = 0
        while first - s > -k2:
            col_vals.append(_diag_value(row, col, first - s))
            s += 1
        while col_vals and not col_vals[-1]:
            col_vals.pop()
    return MinorState(offsets=offsets, row=row_prefix, col=tuple(col_vals))


def initial_state(row, col) -> MinorState:
    """The root state: all window columns of the full matrix present."""
    if row[0] != col[0]:
        raise InconsistentSpec("row and column prefixes must share entry (1,1)")
    return _state_from_offsets(row, col, range(len(row)))


def expand_minor(row, col, state: MinorState, mode: str = "det"):
    """One cofactor-expansion step along the minor's first row.

    Returns (coefficient, child_state) pairs for each nonzero first-row
    entry; children whose leftmost column falls off the band come back
    with an empty col prefix (their determinant is 0) and are pruned by
    children_scheme.  A state with no nonzero first-row entry expands to
    nothing."""
    if mode not in ("det", "perm"):
        raise ValueError("mode must be 'det' or 'perm'")
    k1, k2 = len(row), len(col)
    offsets = state.offsets
    if len(offsets) != k1 or any(o < -k2 or o > k1 - 1 for o in offsets):
        raise BadState(f"offsets {offsets} impossible for a {k1}/{k2} family")
    if _state_from_offsets(row, col, offsets) != state:
        raise BadState("state prefixes do not match the family's diagonals")
    if not state.row or not state.col:
        return ()
    out = []
    for pos, o in enumerate(offsets):
        value = _diag_value(row, col, o)
        if not value:
            continue
        sign = 1 if (mode == "perm" or pos % 2 == 0) else -1
        child_offsets = sorted(x - 1 for x in offsets if x != o)
        child_offsets.append(k1 - 1)
        out.append((sign * value, _state_from_offsets(row, col, child_offsets)))
    return tuple(out)


def children_scheme(row, col, mode: str = "det") -> TransferScheme:
    """Least fixed point of expand_minor from the root state, with
    zero-contribution states (empty row or col prefix) pruned.

    The pattern space has at most C(k1+k2-1, k1) states, but the closure
    still guards itself with a cap and raises SchemeExplosion rather than
    looping silently."""
    row, col = tuple(row), tuple(col)
    root = initial_state(row, col)
    cap = 10 * 2 ** (len(row) + len(col))
    order = {root.offsets: 0}
    states = [root]
    raw_transitions = []
    queue = [root]
    while queue:
        state = queue.pop(0)
        transitions = []
        for coeff, child in expand_minor(row, col, state, mode):
            if not child.row or not child.col:
                continue  # contributes 0 in every dimension
            if child.offsets not in order:
                order[child.offsets] = len(states)
                states.append(child)
                queue.append(child)
                if len(states) > cap:
                    raise SchemeExplosion(
                        f"minor-state closure exceeded {cap} states"
                    )
            transitions.append((coeff, order[child.offsets]))
        raw_transitions.append(transitions)
    return TransferScheme(row, col, mode, states, raw_transitions)


def gf_transfer(row, col, mode: str = "det") -> RationalFunction:
    """Generating function 1 + sum(f(A_n) t^n) from the transfer scheme,
    by solving the linear system over rational functions in t:

        X_root = 1 + sum(c * t * X_child),   X_i = sum(c * t * X_child)

    (only the root gets the constant, which is the empty matrix's value)."""
    scheme = children_scheme(row, col, mode)
    m = len(scheme.states)
    one = RationalFunction(Poly((1,)))
    zero = RationalFunction(Poly())
    rows = [[zero] * m for _ in range(m)]
    for i in range(m):
        rows[i][i] = one
        for coeff, j in scheme.transitions[i]:
            rows[i][j] = rows[i][j] - RationalFunction(Poly((0, Fraction(coeff))))
    rhs = [one] + [zero] * (m - 1)
    sol = solve_linear(Matrix(rows), rhs)
    if sol.status != LinearSolution.UNIQUE:
        raise SingularTransferSystem(f"transfer system was {sol.status}")
    return sol.solution[0]


def family_to_json_dict(row, col, mode: str) -> dict:
    """Family wire format: {"row": [..], "col": [..], "mode": "det"|"perm"}."""
    return {"row": list(row), "col": list(col), "mode": mode}


def family_from_json_dict(obj):
    """Parse the family wire format; returns (row, col, mode)."""
    try:
        row = [x for x in obj["row"]]
        col = [x for x in obj["col"]]
        mode = obj.get("mode", "det")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed family JSON: {exc}") from exc
    if mode not in ("det", "perm"):
        raise ValueError(f"bad mode {mode!r}")
    if not row or not col or row[0] != col[0]:
        raise InconsistentSpec("row and column prefixes must share entry (1,1)")
    return row, col, mode


def scheme_to_json(scheme: TransferScheme) -> dict:
    """Stable debugging dump: states in closure order, then transitions."""
    return {
        "row": [str(x) for x in scheme.row],
        "col": [str(x) for x in scheme.col],
        "mode": scheme.mode,
        "states": [
            {
                "offsets": list(s.offsets),
                "row": [str(x) for x in s.row],
                "col": [str(x) for x in s.col],
            }
            for s in scheme.states
        ],
        "transitions": [
            [[str(c), j] for c, j in row] for row in scheme.transitions
        ],
    }
