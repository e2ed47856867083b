"""Regular matroids realized by totally unimodular matrices.

A matroid is held as a full-row-rank TU matrix over a named ground set.
Bases come from nonzero maximal minors; signed circuits and cocircuits are
the simple chains of the kernel and row space; duals and minors are other
TU realizations over the same (or restricted) ground set.  All arithmetic
is exact.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from . import intlinalg
from .chains import Chain, GroundSet, Orientation, SimpleChain, compatible
from .errors import (
    EmptyMatrix,
    InputFormatError,
    IsColoop,
    IsLoop,
    NotInSpace,
    NotTotallyUnimodular,
    PreconditionViolated,
    WrongSide,
)

# Above this many square submatrices the exhaustive determinant check is
# replaced by the Ghouila-Houri signing criterion (verify="auto").
EXHAUSTIVE_COLUMN_LIMIT = 12

MAX_ELEMENTS = 20


class TUMatrix:
    """A full-row-rank matrix with entries in {-1,0,+1}, verified TU."""

    __slots__ = ("rows", "rank", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], verify: str = "auto"):
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        self.rank = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for i, row in enumerate(self.rows):
            if len(row) != self.ncols:
                raise ValueError("ragged matrix at row %d" % i)
            for j, x in enumerate(row):
                if x not in (-1, 0, 1):
                    raise NotTotallyUnimodular((i,), (j,), x)
        if verify == "auto":
            verify = "minors" if self.ncols <= EXHAUSTIVE_COLUMN_LIMIT else "scaling"
        if verify == "minors":
            self._verify_minors()
        elif verify == "scaling":
            self._verify_ghouila_houri()
        elif verify != "none":
            raise ValueError("unknown verification level %r" % verify)

    def _verify_minors(self):
        for k in range(2, self.rank + 1):
            for ridx in itertools.combinations(range(self.rank), k):
                sub = [self.rows[i] for i in ridx]
                for cidx in itertools.combinations(range(self.ncols), k):
                    d = intlinalg.det([[row[j] for j in cidx] for row in sub])
                    if d not in (-1, 0, 1):
                        raise NotTotallyUnimodular(ridx, cidx, d)

    def _verify_ghouila_houri(self):
        # Every subset of rows admits a +-1 signing whose signed sum has all
        # entries in {-1,0,+1}.  Backtracking with a reachability prune.
        rows = self.rows
        for size in range(1, self.rank + 1):
            for subset in itertools.combinations(range(self.rank), size):
                if not _gh_signable([rows[i] for i in subset]):
                    raise NotTotallyUnimodular(subset, tuple(range(self.ncols)), None)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def submatrix_columns(self, cols: Sequence[int]) -> list:
        return [[row[j] for j in cols] for row in self.rows]


def _gh_signable(rows) -> bool:
    ncols = len(rows[0])

    def rec(i, sums):
        if i == len(rows):
            return all(-1 <= s <= 1 for s in sums)
        remaining = len(rows) - i - 1
        for sign in (1, -1):
            nxt = [s + sign * x for s, x in zip(sums, rows[i])]
            if all(abs(s) <= 1 + remaining for s in nxt) and rec(i + 1, nxt):
                return True
        return False

    return rec(0, [0] * ncols)


def _canonical_chain(ground: GroundSet, support_idx, coeffs) -> SimpleChain:
    """Normalize a +-pair representative: +1 at the smallest support index."""
    lead = min(support_idx)
    if coeffs[lead] < 0:
        coeffs = [-c for c in coeffs]
    return SimpleChain(ground, coeffs)


class RegularMatroid:
    """An oriented regular matroid with lazily cached combinatorial data."""

    def __init__(self, ground: GroundSet, matrix: TUMatrix):
        if len(ground) != matrix.ncols:
            raise ValueError("ground set size %d != column count %d" % (len(ground), matrix.ncols))
        if len(ground) > MAX_ELEMENTS:
            raise ValueError("ground sets are capped at %d elements" % MAX_ELEMENTS)
        self.ground = ground
        self.matrix = matrix
        self.rank = matrix.rank
        self._bases: Optional[tuple] = None
        self._bases_set: Optional[frozenset] = None
        self._circuits: Optional[tuple] = None
        self._cocircuits: Optional[tuple] = None
        self._circuit_index: Optional[dict] = None
        self._cocircuit_index: Optional[dict] = None
        self._dual_rows: Optional[tuple] = None
        self._fund_cache: dict = {}
        self._minor_cache: dict = {}
        self._dual_obj: Optional["RegularMatroid"] = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_matrix(
        cls,
        rows: Sequence[Sequence[int]],
        elements: Optional[Sequence[str]] = None,
        verify: str = "auto",
    ) -> "RegularMatroid":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise EmptyMatrix("matrix must have at least one row and one column")
        ncols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise InputFormatError("row %d has %d entries, expected %d" % (i, len(row), ncols))
        keep = intlinalg.independent_rows(rows)
        selected = [rows[i] for i in keep]
        if not selected:
            selected = []  # rank-0 matroid: all elements are loops
        if elements is None:
            elements = ["e%d" % j for j in range(ncols)]
        ground = GroundSet(elements)
        if selected:
            matrix = TUMatrix(selected, verify=verify)
        else:
            matrix = _empty_matrix(ncols)
        return cls(ground, matrix)

    @classmethod
    def from_graph(
        cls,
        edges: Sequence,
        verify: str = "auto",
    ) -> "RegularMatroid":
        """Matroid of a directed multigraph given as (tail, head[, name]) triples.

        The realization is the signed vertex-edge incidence matrix: +1 at the
        head, -1 at the tail, zero column for a self-loop.
        """
        if not edges:
            raise EmptyMatrix("graph must have at least one edge")
        names = []
        pairs = []
        for k, edge in enumerate(edges):
            if len(edge) == 3:
                tail, head, name = edge
            else:
                tail, head = edge
                name = "e%d" % k
            names.append(str(name))
            pairs.append((str(tail), str(head)))
        vertices = []
        for tail, head in pairs:
            for v in (tail, head):
                if v not in vertices:
                    vertices.append(v)
        rows = []
        for v in vertices:
            row = []
            for tail, head in pairs:
                if tail == head:
                    row.append(0)
                else:
                    row.append(1 if head == v else (-1 if tail == v else 0))
            rows.append(row)
        return cls.from_matrix(rows, elements=names, verify=verify)

    # -- bases ---------------------------------------------------------------

    def bases(self) -> tuple:
        """All bases, as frozensets of element names, in lexicographic order."""
        if self._bases is None:
            out = []
            names = self.ground.elements
            for cidx in itertools.combinations(range(len(names)), self.rank):
                d = intlinalg.det(self.matrix.submatrix_columns(cidx))
                if d:
                    if d not in (-1, 1):
                        raise NotTotallyUnimodular(tuple(range(self.rank)), cidx, d)
                    out.append(frozenset(names[j] for j in cidx))
            self._bases = tuple(out)
        return self._bases

    def basis_set(self) -> frozenset:
        if self._bases_set is None:
            self._bases_set = frozenset(self.bases())
        return self._bases_set

    def is_basis(self, subset: Iterable[str]) -> bool:
        return frozenset(subset) in self.basis_set()

    def loops(self) -> frozenset:
        present = set()
        for b in self.bases():
            present |= b
        return frozenset(set(self.ground.elements) - present)

    def coloops(self) -> frozenset:
        bases = self.bases()
        common = set(bases[0]) if bases else set()
        for b in bases[1:]:
            common &= b
        return frozenset(common)

    # -- circuits and cocircuits ---------------------------------------------

    def _circuit_supports(self, bases) -> list:
        """Circuit supports via basis exchange: C(e, B) = {e} + exchangeable part.

        Loops show up as singleton supports automatically (nothing exchanges).
        """
        basis_set = set(bases)
        names = self.ground.elements
        supports = set()
        for b in bases:
            for e in names:
                if e in b:
                    continue
                supp = {e}
                for x in b:
                    if (b - {x}) | {e} in basis_set:
                        supp.add(x)
                supports.add(frozenset(supp))
        return sorted(supports, key=lambda s: sorted(self.ground.index(e) for e in s))

    def _solve_kernel_chain(self, rows, support: frozenset) -> SimpleChain:
        """The canonical simple kernel chain of `rows` with the given support."""
        idx = sorted(self.ground.index(e) for e in support)
        lead = idx[0]
        rest = idx[1:]
        coeffs = [0] * len(self.ground)
        coeffs[lead] = 1
        if rest:
            a = [[row[j] for j in rest] for row in rows]
            b = [-row[lead] for row in rows]
            x = intlinalg.solve_exact(a, b)
            if x is None:
                raise AssertionError("support %r is not a circuit of the realization" % (support,))
            for j, val in zip(rest, x):
                if val.denominator != 1 or int(val) not in (-1, 0, 1):
                    raise AssertionError("non-simple kernel chain at %r: %r" % (support, x))
                coeffs[j] = int(val)
        else:
            if any(row[lead] for row in rows):
                raise AssertionError("singleton support %r is not a loop" % (support,))
        return _canonical_chain(self.ground, idx, coeffs)

    def signed_circuits(self) -> tuple:
        """All signed circuits, closed under negation, canonical pair first."""
        if self._circuits is None:
            chains = []
            for supp in self._circuit_supports(self.bases()):
                c = self._solve_kernel_chain(self.matrix.rows, supp)
                chains.extend((c, -c))
            self._circuits = tuple(chains)
        return self._circuits

    def signed_cocircuits(self) -> tuple:
        if self._cocircuits is None:
            dual_bases = tuple(frozenset(set(self.ground.elements) - b) for b in self.bases())
            chains = []
            for supp in self._circuit_supports(dual_bases):
                c = self._solve_kernel_chain(self.dual_rows(), supp)
                chains.extend((c, -c))
            self._cocircuits = tuple(chains)
        return self._cocircuits

    def circuit_supports(self) -> tuple:
        return tuple(c.support() for c in self.signed_circuits()[::2])

    def cocircuit_supports(self) -> tuple:
        return tuple(c.support() for c in self.signed_cocircuits()[::2])

    def circuit_pair(self, support: frozenset):
        """The +- pair of signed circuits on a circuit support."""
        if self._circuit_index is None:
            self._circuit_index = {c.support(): c for c in self.signed_circuits()[::2]}
        try:
            c = self._circuit_index[frozenset(support)]
        except KeyError:
            raise KeyError("%r is not a circuit support" % (set(support),))
        return (c, -c)

    def cocircuit_pair(self, support: frozenset):
        if self._cocircuit_index is None:
            self._cocircuit_index = {c.support(): c for c in self.signed_cocircuits()[::2]}
        try:
            c = self._cocircuit_index[frozenset(support)]
        except KeyError:
            raise KeyError("%r is not a cocircuit support" % (set(support),))
        return (c, -c)

    # -- fundamental chains ----------------------------------------------------

    def fundamental_circuit(self, basis: frozenset, e: str):
        """The +- pair of signed circuits inside basis + e, for e outside the basis."""
        basis = frozenset(basis)
        key = ("c", basis, e)
        if key in self._fund_cache:
            return self._fund_cache[key]
        if not self.is_basis(basis):
            from .errors import NotABasis

            raise NotABasis(sorted(basis))
        if e in basis:
            raise WrongSide("%s lies in the basis; fundamental circuits need e outside" % e)
        basis_set = self.basis_set()
        supp = {e}
        for x in basis:
            if (basis - {x}) | {e} in basis_set:
                supp.add(x)
        pair = self.circuit_pair(frozenset(supp))
        self._fund_cache[key] = pair
        return pair

    def fundamental_cocircuit(self, basis: frozenset, e: str):
        """The +- pair of signed cocircuits inside (E - basis) + e, for e in the basis."""
        basis = frozenset(basis)
        key = ("d", basis, e)
        if key in self._fund_cache:
            return self._fund_cache[key]
        if not self.is_basis(basis):
            from .errors import NotABasis

            raise NotABasis(sorted(basis))
        if e not in basis:
            raise WrongSide("%s lies outside the basis; fundamental cocircuits need e inside" % e)
        basis_set = self.basis_set()
        supp = {e}
        for x in self.ground.elements:
            if x not in basis and (basis - {e}) | {x} in basis_set:
                supp.add(x)
        pair = self.cocircuit_pair(frozenset(supp))
        self._fund_cache[key] = pair
        return pair

    # -- duality -----------------------------------------------------------------

    def dual_rows(self) -> tuple:
        """Rows of a TU realization of the dual, with ker = row space of self."""
        if self._dual_rows is None:
            if self.rank == 0:
                # dual of an all-loop matroid is free: identity realization
                n = len(self.ground)
                self._dual_rows = tuple(
                    tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
                )
                return self._dual_rows
            names = self.ground.elements
            n = len(names)
            base = next(iter(self.bases()))
            bidx = sorted(self.ground.index(e) for e in base)
            nonb = [j for j in range(n) if j not in bidx]
            acols = self.matrix.submatrix_columns(bidx)
            rows = []
            # reduced row echelon against the basis columns: D[i][j] entries
            coeff = {}
            for j in nonb:
                x = intlinalg.solve_exact(acols, self.matrix.column(j))
                assert x is not None
                for i, val in enumerate(x):
                    assert val.denominator == 1 and int(val) in (-1, 0, 1)
                    coeff[(i, j)] = int(val)
            for j in nonb:
                row = [0] * n
                row[j] = 1
                for i, bcol in enumerate(bidx):
                    row[bcol] = -coeff[(i, j)]
                rows.append(tuple(row))
            self._dual_rows = tuple(rows)
        return self._dual_rows

    def dual(self) -> "RegularMatroid":
        """The dual matroid: complemented bases, circuits and cocircuits swapped."""
        if self._dual_obj is None:
            out = RegularMatroid(self.ground, _trusted_matrix(self.dual_rows(), len(self.ground)))
            complements = [frozenset(set(self.ground.elements) - b) for b in self.bases()]
            out._bases = tuple(
                sorted(complements, key=lambda b: sorted(self.ground.index(e) for e in b))
            )
            self._dual_obj = out
        return self._dual_obj

    # -- minors --------------------------------------------------------------------

    def delete(self, e: str) -> "RegularMatroid":
        key = ("del", e)
        if key in self._minor_cache:
            return self._minor_cache[key]
        if e in self.coloops():
            raise IsColoop(e)
        j = self.ground.index(e)
        rows = [row[:j] + row[j + 1:] for row in self.matrix.rows]
        ground = self.ground.without(e)
        out = RegularMatroid(ground, _trusted_matrix(rows, len(ground)))
        self._minor_cache[key] = out
        return out

    def contract(self, e: str) -> "RegularMatroid":
        key = ("con", e)
        if key in self._minor_cache:
            return self._minor_cache[key]
        if e in self.loops():
            raise IsLoop(e)
        j = self.ground.index(e)
        rows = [list(r) for r in self.matrix.rows]
        piv = next(i for i in range(len(rows)) if rows[i][j])
        pval = rows[piv][j]
        for i in range(len(rows)):
            if i != piv and rows[i][j]:
                f = rows[i][j] * pval  # pval in {-1,+1} so this is the exact ratio
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[piv])]
        del rows[piv]
        rows = [row[:j] + row[j + 1:] for row in rows]
        ground = self.ground.without(e)
        out = RegularMatroid(ground, _trusted_matrix(rows, len(ground)))
        self._minor_cache[key] = out
        return out

    # -- connectivity ------------------------------------------------------------------

    def components(self) -> tuple:
        """Partition of E by 'some circuit contains both', as sorted frozensets."""
        parent = {e: e for e in self.ground.elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for supp in self.circuit_supports():
            items = sorted(supp)
            for other in items[1:]:
                parent[find(other)] = find(items[0])
        groups = {}
        for e in self.ground.elements:
            groups.setdefault(find(e), []).append(e)
        comps = [frozenset(v) for v in groups.values()]
        return tuple(sorted(comps, key=lambda c: min(self.ground.index(e) for e in c)))

    def same_component(self, e: str, f: str) -> bool:
        for comp in self.components():
            if e in comp:
                return f in comp
        raise KeyError(e)

    # -- decision procedures ------------------------------------------------------------

    def three_painting(self, f, x: str):
        """A signed circuit through x compatible with f, or a signed cocircuit
        through x compatible with the complement of the negation.

        Exactly one kind exists whenever f orients x in a single direction.
        Returns (kind, chain) with kind "circuit" or "cocircuit".
        """
        four = f.to_fourientation() if isinstance(f, Orientation) else f
        from .chains import BOTH, EMPTY

        if four[x] in (EMPTY, BOTH):
            raise PreconditionViolated("element %s is not singly oriented" % x)
        for c in self.signed_circuits():
            if c[x] != 0 and compatible(c, four):
                return ("circuit", c)
        target = four.negate().complement()
        for c in self.signed_cocircuits():
            if c[x] != 0 and compatible(c, target):
                return ("cocircuit", c)
        raise AssertionError("painting dichotomy failed at %s" % x)

    def decompose(self, p: Chain, space: str) -> list:
        """Greedy sign-agreeing decomposition of p into signed circuits or
        cocircuits (space "kernel" or "rowspace"), repetitions included."""
        if space == "kernel":
            if any(v != 0 for v in intlinalg.matmul_vec(self.matrix.rows, p.coeffs)):
                raise NotInSpace("chain is not a flow")
            candidates = self.signed_circuits()
        elif space == "rowspace":
            if self.matrix.rows and not intlinalg.in_row_space(self.matrix.rows, p.coeffs):
                raise NotInSpace("chain is not in the row space")
            if not self.matrix.rows and not p.is_zero():
                raise NotInSpace("chain is not in the row space")
            candidates = self.signed_cocircuits()
        else:
            raise ValueError("space must be 'kernel' or 'rowspace'")
        out = []
        q = list(p.coeffs)
        names = self.ground.elements
        while any(q):
            pick = None
            for c in candidates:
                ok = True
                for i, v in enumerate(c.coeffs):
                    if v and q[i] * v <= 0:
                        ok = False
                        break
                if ok and not c.is_zero():
                    pick = c
                    break
            if pick is None:
                raise AssertionError("no sign-agreeing chain inside support %r" % (
                    [names[i] for i, v in enumerate(q) if v],))
            k = min(abs(q[i]) for i, v in enumerate(pick.coeffs) if v)
            for i, v in enumerate(pick.coeffs):
                q[i] -= k * v
            out.extend([pick] * k)
        return out

    def __repr__(self) -> str:
        return "RegularMatroid(rank=%d, elements=%s)" % (self.rank, ",".join(self.ground.elements))


def _trusted_matrix(rows, ncols: int) -> TUMatrix:
    """Wrap rows known TU by construction (minor / dual / pivot of a TU matrix)."""
    if not rows:
        return _empty_matrix(ncols)
    return TUMatrix(rows, verify="none")


def _empty_matrix(ncols: int) -> TUMatrix:
    m = TUMatrix.__new__(TUMatrix)
    m.rows = ()
    m.rank = 0
    m.ncols = ncols
    return m


# -- file formats ---------------------------------------------------------------


def parse_matrix_file(text: str, verify: str = "auto") -> RegularMatroid:
    """Matrix file: first line "<r> <m>", then r rows; optional
    "# elements: ..." header; other #-lines are comments."""
    elements = None
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("elements:"):
                elements = body.split(":", 1)[1].split()
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise InputFormatError("expected '<rows> <cols>' header", lineno)
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise InputFormatError("non-integer header", lineno)
            continue
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise InputFormatError("non-integer matrix entry", lineno)
        if len(rows[-1]) != header[1]:
            raise InputFormatError(
                "expected %d entries, got %d" % (header[1], len(rows[-1])), lineno
            )
    if header is None:
        raise InputFormatError("empty matrix file")
    if len(rows) != header[0]:
        raise InputFormatError("expected %d rows, got %d" % (header[0], len(rows)))
    if elements is not None and len(elements) != header[1]:
        raise InputFormatError("element list length %d != %d columns" % (len(elements), header[1]))
    return RegularMatroid.from_matrix(rows, elements=elements, verify=verify)


def parse_graph_file(text: str, verify: str = "auto") -> RegularMatroid:
    """Graph file: lines "tail head [name]"; #-lines are comments."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InputFormatError("expected 'tail head [name]'", lineno)
        edges.append(tuple(parts))
    if not edges:
        raise InputFormatError("graph file has no edges")
    return RegularMatroid.from_graph(edges, verify=verify)


def format_matrix_file(m: RegularMatroid) -> str:
    lines = ["# elements: %s" % " ".join(m.ground.elements)]
    lines.append("%d %d" % (m.matrix.rank, len(m.ground)))
    for row in m.matrix.rows:
        lines.append(" ".join("%d" % x for x in row))
    return "\n".join(lines) + "\n"
