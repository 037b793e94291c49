"""Brute-force checks over small prime fields.

Everything here works with literal matrices: a representation assigns
a matrix over F_p to every arrow, morphisms are solved for as nullspace
vectors of an intertwiner system, and decompositions are found by
locating idempotent endomorphisms.  None of it scales past toy sizes,
which is the point: the exact arithmetic elsewhere in the package is
validated against these counts on small inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..errors import (
    EndAlgebraTooLargeError,
    FieldNotPrimeError,
    ShapeMismatchError,
    SpaceTooLargeError,
)
from ..quiver import Quiver, Vector, check_vector, connected_components, support
from . import kernels


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_prime(p: int) -> None:
    if not _is_prime(p):
        raise FieldNotPrimeError(f"field size must be prime, got {p}")


@dataclass(eq=False)
class FiniteFieldRep:
    """A representation over F_p: one int64 matrix per arrow.

    The matrix for arrow (s, t) has shape (alpha[t-1], alpha[s-1]) and
    entries reduced mod p.  Instances compare by identity; use
    hom_basis to decide isomorphism questions.
    """

    quiver: Quiver
    p: int
    alpha: Vector
    matrices: tuple[np.ndarray, ...]


def make_rep(
    quiver: Quiver, p: int, alpha: Vector, matrices
) -> FiniteFieldRep:
    _require_prime(p)
    alpha = check_vector(quiver, alpha, allow_negative=False)
    mats = []
    if len(matrices) != len(quiver.arrows):
        raise ShapeMismatchError(
            f"expected {len(quiver.arrows)} matrices, got {len(matrices)}"
        )
    for (s, t), m in zip(quiver.arrows, matrices):
        m = np.asarray(m, dtype=np.int64) % p
        want = (alpha[t - 1], alpha[s - 1])
        if m.shape != want:
            raise ShapeMismatchError(
                f"arrow {s}->{t} needs shape {want}, got {m.shape}"
            )
        mats.append(m)
    return FiniteFieldRep(quiver, p, alpha, tuple(mats))


def decode_rep(quiver: Quiver, alpha: Vector, p: int, index: int) -> FiniteFieldRep:
    """Representation number `index`: base-p digits fill the arrow
    matrices in arrow order, row-major.  Accepts arbitrarily large
    indices (python integers), unlike the batch kernels."""
    _require_prime(p)
    alpha = check_vector(quiver, alpha, allow_negative=False)
    mats = []
    for s, t in quiver.arrows:
        rows, cols = alpha[t - 1], alpha[s - 1]
        m = np.zeros((rows, cols), dtype=np.int64)
        for r in range(rows):
            for c in range(cols):
                index, digit = divmod(index, p)
                m[r, c] = digit
        mats.append(m)
    return FiniteFieldRep(quiver, p, alpha, tuple(mats))


def random_rep(
    quiver: Quiver, alpha: Vector, p: int, rng: random.Random
) -> FiniteFieldRep:
    _require_prime(p)
    alpha = check_vector(quiver, alpha, allow_negative=False)
    mats = []
    for s, t in quiver.arrows:
        rows, cols = alpha[t - 1], alpha[s - 1]
        m = np.array(
            [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
            dtype=np.int64,
        ).reshape(rows, cols)
        mats.append(m)
    return FiniteFieldRep(quiver, p, alpha, tuple(mats))


# ---------------------------------------------------------------------------
# small dense linear algebra mod p


def _rref(mat: np.ndarray, p: int):
    """Reduced row echelon form.  Returns (rref, pivot column list)."""
    m = mat.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = -1
        for r2 in range(r, rows):
            if m[r2, c] % p:
                pivot = r2
                break
        if pivot == -1:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
        for r2 in range(rows):
            if r2 != r and m[r2, c]:
                m[r2] = (m[r2] - m[r2, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def _rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(_rref(mat, p)[1])


def _nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right nullspace mod p, one vector per row."""
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    rr, pivots = _rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-rr[r, fc]) % p
    return basis


def _inverse(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[0]
    if n == 0:
        return mat.copy()
    aug = np.concatenate([mat % p, np.eye(n, dtype=np.int64)], axis=1)
    rr, pivots = _rref(aug, p)
    if pivots[: n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return rr[:, n:]


def _is_invertible(mat: np.ndarray, p: int) -> bool:
    n = mat.shape[0]
    return n == 0 or _rank(mat, p) == n


# ---------------------------------------------------------------------------
# hom spaces


def _hom_system(rep_a: FiniteFieldRep, rep_b: FiniteFieldRep) -> np.ndarray:
    """Rows of the linear system cutting out Hom(rep_a, rep_b).

    Unknowns are the entries of one alpha_b[v] x alpha_a[v] block per
    vertex, row-major, blocks in vertex order."""
    q = rep_a.quiver
    da, db = rep_a.alpha, rep_b.alpha
    offsets = []
    acc = 0
    for v in range(q.vertex_count):
        offsets.append(acc)
        acc += db[v] * da[v]
    n_unknowns = acc
    rows = []
    for (s, t), ma, mb in zip(q.arrows, rep_a.matrices, rep_b.matrices):
        i, j = s - 1, t - 1
        for r in range(db[j]):
            for c in range(da[i]):
                row = np.zeros(n_unknowns, dtype=np.int64)
                # f_t composed with rep_a's arrow matrix
                for k in range(da[j]):
                    row[offsets[j] + r * da[j] + k] += ma[k, c]
                # minus rep_b's arrow matrix composed with f_s
                for k in range(db[i]):
                    row[offsets[i] + k * da[i] + c] -= mb[r, k]
                rows.append(row)
    if not rows:
        return np.zeros((0, n_unknowns), dtype=np.int64)
    return np.stack(rows) % rep_a.p


def hom_basis(rep_a: FiniteFieldRep, rep_b: FiniteFieldRep) -> list[tuple[np.ndarray, ...]]:
    """Basis of the morphism space rep_a -> rep_b as per-vertex blocks."""
    if rep_a.quiver != rep_b.quiver or rep_a.p != rep_b.p:
        raise ShapeMismatchError("hom requires the same quiver and field")
    q = rep_a.quiver
    da, db = rep_a.alpha, rep_b.alpha
    system = _hom_system(rep_a, rep_b)
    basis_rows = _nullspace(system, rep_a.p)
    out = []
    for vec in basis_rows:
        blocks = []
        pos = 0
        for v in range(q.vertex_count):
            size = db[v] * da[v]
            blocks.append(vec[pos : pos + size].reshape(db[v], da[v]))
            pos += size
        out.append(tuple(blocks))
    return out


@dataclass(frozen=True)
class EndStats:
    end_dim: int
    is_brick: bool


def end_dimension(rep: FiniteFieldRep) -> EndStats:
    """Dimension of the endomorphism algebra; brick means dimension 1."""
    e = len(hom_basis(rep, rep))
    assert e >= 1, "identity endomorphism went missing"
    return EndStats(end_dim=e, is_brick=(e == 1))


# ---------------------------------------------------------------------------
# brick search


@dataclass(frozen=True)
class BrickSearch:
    found: bool
    index: int | None
    definitive: bool
    checked: int
    seed: int | None
    note: str


def brick_witness(
    quiver: Quiver,
    alpha: Vector,
    p: int,
    *,
    budget: int = 20000,
    exhaustive_cap: int = 1 << 22,
    seed: int = 0,
) -> BrickSearch:
    """Look for a representation of alpha over F_p with trivial
    endomorphisms.

    When the whole representation space fits under exhaustive_cap the
    scan is complete and a negative answer is definitive.  Otherwise a
    seeded sample of `budget` indices is tried and a negative answer
    only means the sample missed.
    """
    _require_prime(p)
    alpha = check_vector(quiver, alpha, allow_negative=False)
    exponent = kernels.rep_space_exponent(quiver, alpha)
    space = p ** exponent
    if space <= exhaustive_cap:
        checked = 0
        chunk = 1 << 14
        pos = 0
        while pos < space:
            hi = min(pos + chunk, space)
            dims = kernels.end_dims_range(quiver, alpha, p, pos, hi)
            checked = hi
            hits = np.nonzero(dims == 1)[0]
            if hits.size:
                idx = pos + int(hits[0])
                return BrickSearch(
                    found=True,
                    index=idx,
                    definitive=True,
                    checked=pos + int(hits[0]) + 1,
                    seed=None,
                    note=f"exhaustive scan over {space} representations",
                )
            pos = hi
        return BrickSearch(
            found=False,
            index=None,
            definitive=True,
            checked=checked,
            seed=None,
            note=f"exhaustive scan over {space} representations found no brick",
        )
    rng = random.Random(seed)
    for trial in range(budget):
        idx = rng.randrange(space)
        rep = decode_rep(quiver, alpha, p, idx)
        if end_dimension(rep).is_brick:
            return BrickSearch(
                found=True,
                index=idx,
                definitive=True,
                checked=trial + 1,
                seed=seed,
                note=f"sampled {trial + 1} of {space} representations",
            )
    return BrickSearch(
        found=False,
        index=None,
        definitive=False,
        checked=budget,
        seed=seed,
        note=(
            f"budget of {budget} samples exhausted over a space of "
            f"{space} representations; inconclusive"
        ),
    )


# ---------------------------------------------------------------------------
# sampled decompositions


@dataclass(frozen=True)
class DecompositionSample:
    """Tally of indecomposable-summand partitions over random samples."""

    counts: dict
    modal_partition: tuple
    trials: int
    skipped: int
    seed: int
    p: int


def _restrict_rep(rep: FiniteFieldRep, vertices) -> tuple[FiniteFieldRep, tuple[int, ...]]:
    """Restrict to the arrows among `vertices`; other blocks are empty."""
    labels = tuple(sorted(vertices))
    pos = {v: i + 1 for i, v in enumerate(labels)}
    arrows = []
    mats = []
    for (s, t), m in zip(rep.quiver.arrows, rep.matrices):
        if s in pos and t in pos:
            arrows.append((pos[s], pos[t]))
            mats.append(m)
    sub = Quiver(len(labels), tuple(arrows))
    alpha = tuple(rep.alpha[v - 1] for v in labels)
    return FiniteFieldRep(sub, rep.p, alpha, tuple(mats)), labels


def _embed_vec(vec, labels, n) -> Vector:
    out = [0] * n
    for value, v in zip(vec, labels):
        out[v - 1] = value
    return tuple(out)


def _unit_count(basis_flat: np.ndarray, shapes, p: int) -> int:
    """Count invertible elements in the span of the basis.

    Walks all p^e coefficient tuples in digit chunks; an element is a
    unit exactly when every vertex block is invertible."""
    e = basis_flat.shape[0]
    total = p ** e
    units = 0
    chunk = 4096
    pos = 0
    while pos < total:
        hi = min(pos + chunk, total)
        digits = kernels._digit_matrix(pos, hi, p, e)
        elems = digits @ basis_flat % p
        ok = np.ones(hi - pos, dtype=bool)
        offset = 0
        for size in shapes:
            block = elems[:, offset : offset + size * size].reshape(-1, size, size)
            for b in range(block.shape[0]):
                if ok[b] and not _is_invertible(block[b], p):
                    ok[b] = False
            offset += size * size
        units += int(np.count_nonzero(ok))
        pos = hi
    return total - units  # nonunits


def _find_idempotent(rep: FiniteFieldRep, basis, cap: int):
    """Search End(rep) for a nontrivial idempotent.

    Returns (idempotent blocks, None) when one exists, else
    (None, d) where p^d counts the nonunits p^(e-d) ... i.e. d is the
    residue degree of the local endomorphism ring."""
    p = rep.p
    e = len(basis)
    if p ** e > cap:
        raise EndAlgebraTooLargeError(
            f"endomorphism algebra has {p}^{e} elements, over the cap {cap}"
        )
    shapes = [a for a in rep.alpha]
    basis_flat = np.stack(
        [np.concatenate([blk.ravel() for blk in b]) if b else np.zeros(0) for b in basis]
    ).astype(np.int64)
    identity_flat = np.concatenate(
        [np.eye(a, dtype=np.int64).ravel() for a in rep.alpha]
    )
    total = p ** e
    chunk = 4096
    pos = 0
    while pos < total:
        hi = min(pos + chunk, total)
        digits = kernels._digit_matrix(pos, hi, p, e)
        elems = digits @ basis_flat % p
        nonzero = elems.any(axis=1)
        not_identity = (elems != identity_flat[None, :]).any(axis=1)
        candidate = nonzero & not_identity
        if candidate.any():
            # idempotency check per vertex block, batched
            idem = candidate.copy()
            offset = 0
            for size in shapes:
                if size == 0:
                    continue
                block = elems[:, offset : offset + size * size].reshape(
                    -1, size, size
                )
                sq = np.einsum("bij,bjk->bik", block, block) % p
                idem &= (sq == block).all(axis=(1, 2))
                offset += size * size
            hits = np.nonzero(idem)[0]
            if hits.size:
                row = elems[int(hits[0])]
                blocks = []
                offset = 0
                for size in shapes:
                    blocks.append(
                        row[offset : offset + size * size].reshape(size, size)
                    )
                    offset += size * size
                return tuple(blocks), None
        pos = hi
    nonunits = _unit_count(basis_flat, shapes, p)
    d = 0
    residual = nonunits
    if residual:
        while residual % p == 0:
            residual //= p
            d += 1
        if residual != 1:
            raise RuntimeError(
                f"nonunit count {nonunits} is not a power of {p}; "
                "the endomorphism ring is not local"
            )
        d = e - d
    else:
        # no nonunits at all: End is a field of size p^e
        d = e
    return None, d


def _split_by_idempotent(rep: FiniteFieldRep, idem) -> tuple[FiniteFieldRep, FiniteFieldRep]:
    p = rep.p
    q = rep.quiver
    bases = []
    ranks = []
    for v, t_block in enumerate(idem):
        size = rep.alpha[v]
        if size == 0:
            bases.append((np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)))
            ranks.append(0)
            continue
        _, pivots = _rref(t_block, p)
        image = t_block[:, pivots] if pivots else np.zeros((size, 0), dtype=np.int64)
        kernel = _nullspace(t_block, p).T
        change = np.concatenate([image, kernel], axis=1)
        assert change.shape == (size, size)
        bases.append((change, _inverse(change, p)))
        ranks.append(image.shape[1])
    top_mats = []
    bot_mats = []
    for (s, t), m in zip(q.arrows, rep.matrices):
        i, j = s - 1, t - 1
        conj = bases[j][1] @ m @ bases[i][0] % p
        ri, rj = ranks[i], ranks[j]
        assert not conj[:rj, ri:].any() and not conj[rj:, :ri].any(), (
            "idempotent failed to split the arrow matrices into blocks"
        )
        top_mats.append(conj[:rj, :ri])
        bot_mats.append(conj[rj:, ri:])
    top_alpha = tuple(ranks)
    bot_alpha = tuple(rep.alpha[v] - ranks[v] for v in range(q.vertex_count))
    top = FiniteFieldRep(q, p, top_alpha, tuple(top_mats))
    bot = FiniteFieldRep(q, p, bot_alpha, tuple(bot_mats))
    return top, bot


def _indecomposable_pieces(rep: FiniteFieldRep, cap: int) -> list[Vector]:
    """Dimension vectors of the indecomposable summands, normalized to
    split off scalar extensions.

    A summand whose endomorphism ring is local with residue field of
    degree d over F_p turns into d copies of (dim vector)/d: such a
    summand is the restriction of scalars of an absolutely
    indecomposable piece defined over the bigger field, and the tally
    should count the geometric pieces."""
    if not any(rep.alpha):
        return []
    n = rep.quiver.vertex_count
    # split across support components first: no arrows join them,
    # and it keeps the endomorphism algebras small
    comps = connected_components(rep.quiver)
    live = [c for c in comps if any(rep.alpha[v - 1] for v in c)]
    if len(live) > 1 or len(comps) > 1:
        pieces: list[Vector] = []
        for comp in live:
            sub, labels = _restrict_rep(rep, comp)
            for vec in _indecomposable_pieces(sub, cap):
                pieces.append(_embed_vec(vec, labels, n))
        return pieces
    supp = support(rep.alpha)
    if set(supp) != set(range(1, n + 1)):
        sub, labels = _restrict_rep(rep, supp)
        return [
            _embed_vec(vec, labels, n)
            for vec in _indecomposable_pieces(sub, cap)
        ]
    # a support subquiver without arrows is a sum of vertex simples
    if not rep.quiver.arrows:
        out = []
        for v in range(1, n + 1):
            unit = tuple(1 if w == v else 0 for w in range(1, n + 1))
            out.extend([unit] * rep.alpha[v - 1])
        return out
    basis = hom_basis(rep, rep)
    if len(basis) == 1:
        return [rep.alpha]
    idem, degree = _find_idempotent(rep, basis, cap)
    if idem is not None:
        top, bot = _split_by_idempotent(rep, idem)
        return _indecomposable_pieces(top, cap) + _indecomposable_pieces(bot, cap)
    assert degree is not None and degree >= 1
    if degree == 1:
        return [rep.alpha]
    if any(a % degree for a in rep.alpha):
        raise RuntimeError(
            f"residue degree {degree} does not divide the dimension vector {rep.alpha}"
        )
    shrunk = tuple(a // degree for a in rep.alpha)
    return [shrunk] * degree


def sampled_generic_decomposition(
    quiver: Quiver,
    alpha: Vector,
    p: int,
    trials: int,
    *,
    seed: int = 0,
    idempotent_cap: int = 1 << 20,
) -> DecompositionSample:
    """Decompose random representations and tally the partitions.

    Each trial draws uniform matrix entries, splits the representation
    into indecomposables by idempotent search, and records the sorted
    tuple of summand dimension vectors.  Samples whose endomorphism
    algebra blows past idempotent_cap are skipped and counted.  The
    modal partition estimates the generic decomposition."""
    _require_prime(p)
    alpha = check_vector(quiver, alpha, allow_negative=False)
    rng = random.Random(seed)
    counts: dict[tuple, int] = {}
    skipped = 0
    for _ in range(trials):
        rep = random_rep(quiver, alpha, p, rng)
        try:
            pieces = _indecomposable_pieces(rep, idempotent_cap)
        except EndAlgebraTooLargeError:
            skipped += 1
            continue
        if pieces:
            total = tuple(sum(col) for col in zip(*pieces))
            assert total == alpha, "summand dimensions do not add up"
        partition = tuple(sorted(pieces, key=lambda v: (sum(v), v)))
        counts[partition] = counts.get(partition, 0) + 1
    if not counts:
        raise EndAlgebraTooLargeError(
            "every sample was skipped; the endomorphism algebras are too "
            "large for the idempotent search"
        )
    top = max(counts.values())
    modal = min(part for part, cnt in counts.items() if cnt == top)
    return DecompositionSample(
        counts=counts,
        modal_partition=modal,
        trials=trials,
        skipped=skipped,
        seed=seed,
        p=p,
    )


# ---------------------------------------------------------------------------
# isomorphism classes


def count_iso_classes(
    quiver: Quiver,
    alpha: Vector,
    p: int,
    *,
    space_cap: int = 1 << 22,
    hom_cap: int = 1 << 20,
) -> int:
    """Number of isomorphism classes of representations of alpha over
    F_p, by exhaustive orbit partitioning.

    Representations are bucketed by cheap invariants (endomorphism
    dimension, the rank of every arrow matrix); within a bucket,
    isomorphism is decided by scanning the hom space in both directions
    for an element with all vertex blocks invertible."""
    _require_prime(p)
    alpha = check_vector(quiver, alpha, allow_negative=False)
    exponent = kernels.rep_space_exponent(quiver, alpha)
    space = p ** exponent
    if space > space_cap:
        raise SpaceTooLargeError(
            f"representation space has {p}^{exponent} points, over the cap {space_cap}"
        )
    end_dims = kernels.end_dims_range(quiver, alpha, p, 0, space)
    buckets: dict[tuple, list[FiniteFieldRep]] = {}
    for idx in range(space):
        rep = decode_rep(quiver, alpha, p, idx)
        key = (
            int(end_dims[idx]),
            tuple(_rank(m, p) for m in rep.matrices),
        )
        group = buckets.setdefault(key, [])
        if not any(_isomorphic(rep, other, hom_cap) for other in group):
            group.append(rep)
    return sum(len(group) for group in buckets.values())


def _isomorphic(rep_a: FiniteFieldRep, rep_b: FiniteFieldRep, hom_cap: int) -> bool:
    if rep_a.alpha != rep_b.alpha:
        return False
    if not any(rep_a.alpha):
        return True
    p = rep_a.p
    basis = hom_basis(rep_a, rep_b)
    e = len(basis)
    if e == 0:
        return False
    if p ** e > hom_cap:
        raise EndAlgebraTooLargeError(
            f"hom space has {p}^{e} elements, over the cap {hom_cap}"
        )
    sizes = rep_a.alpha
    basis_flat = np.stack(
        [np.concatenate([blk.ravel() for blk in b]) for b in basis]
    ).astype(np.int64)
    total = p ** e
    chunk = 4096
    pos = 1  # zero map is never an isomorphism
    while pos < total:
        hi = min(pos + chunk, total)
        digits = kernels._digit_matrix(pos, hi, p, e)
        elems = digits @ basis_flat % p
        for row in elems:
            offset = 0
            good = True
            for size in sizes:
                block = row[offset : offset + size * size].reshape(size, size)
                if not _is_invertible(block, p):
                    good = False
                    break
                offset += size * size
            if good:
                return True
        pos = hi
    return False


def direct_sum(rep_a: FiniteFieldRep, rep_b: FiniteFieldRep) -> FiniteFieldRep:
    """Block-diagonal direct sum of two representations."""
    if rep_a.quiver != rep_b.quiver or rep_a.p != rep_b.p:
        raise ShapeMismatchError("direct sum requires the same quiver and field")
    q = rep_a.quiver
    alpha = tuple(a + b for a, b in zip(rep_a.alpha, rep_b.alpha))
    mats = []
    for (s, t), ma, mb in zip(q.arrows, rep_a.matrices, rep_b.matrices):
        i, j = s - 1, t - 1
        rows = alpha[j]
        cols = alpha[i]
        m = np.zeros((rows, cols), dtype=np.int64)
        m[: ma.shape[0], : ma.shape[1]] = ma
        m[ma.shape[0] :, ma.shape[1] :] = mb
        mats.append(m)
    return FiniteFieldRep(q, rep_a.p, alpha, tuple(mats))
