"""Exact minimum-weight perfect matching on complete graphs of even order.

Minimum perfect matching is solved as a maximum-weight matching with the
primal-dual blossom method (Edmonds; Galil's O(n^3) bookkeeping) on integer
weights only, so results are exact. Ties between minimum matchings are
broken lexicographically by folding a tie-break term into each edge weight:

    edge (i, j), i < j  ->  w(i, j) * S + j * B ** (k - 1 - i)

With ``B = k + 1`` and ``S = B ** k`` the tie-break part of any matching is
strictly below ``S``, so only matchings of minimum original weight compete,
and among them the one whose partner vector (partner of the lowest free
vertex, then the next...) is smallest wins. The transformed weight is then
subtracted from an offset large enough that every perfect matching outweighs
every imperfect one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import UnsupportedSizeError, ValidationError
from .instance import Number

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class PairMatching:
    """A perfect matching as sorted 0-based ``(i, j)`` pairs with ``i < j``."""

    pairs: tuple[tuple[int, int], ...]
    weight: Number

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.pairs:
            out[i] = j
            out[j] = i
        return out


def _check_table(w: Sequence[Sequence[Number]]) -> int:
    k = len(w)
    if k < 2 or k % 2:
        raise UnsupportedSizeError(f"perfect matching needs an even vertex count >= 2, got {k}")
    for i in range(k):
        if len(w[i]) != k:
            raise ValidationError("weight table is not square")
        for j in range(i + 1, k):
            if w[i][j] != w[j][i]:
                raise ValidationError(f"weight table asymmetric at ({i}, {j})")
    return k


def _integer_table(w: Sequence[Sequence[Number]]) -> list[list[int]]:
    denominators = [x.denominator for row in w for x in row if isinstance(x, Fraction)]
    scale = lcm(*denominators) if denominators else 1
    return [[int(x * scale) for x in row] for row in w]


def min_perfect_matching(w: Sequence[Sequence[Number]]) -> PairMatching:
    k = _check_table(w)
    if k == 2:
        return PairMatching(((0, 1),), w[0][1])
    iw = _integer_table(w)
    low = min(min(row) for row in iw)
    base = k + 1
    scale = base ** k
    keyed = []
    for i in range(k):
        tie = base ** (k - 1 - i)
        for j in range(i + 1, k):
            keyed.append((i, j, (iw[i][j] - low) * scale + j * tie))
    top = (k // 2 + 1) * (max(c for _, _, c in keyed) + 1)
    mate = max_weight_matching(k, [(i, j, top - c) for i, j, c in keyed])
    pairs = tuple(sorted((v, mate[v]) for v in range(k) if v < mate[v]))
    if len(pairs) != k // 2:
        raise ValidationError("blossom returned an imperfect matching")
    return PairMatching(pairs, sum(w[i][j] for i, j in pairs))


def brute_force_matching(w: Sequence[Sequence[Number]]) -> PairMatching:
    """Enumerate all (k-1)!! matchings; test oracle for small k."""
    k = _check_table(w)
    if k > BRUTE_FORCE_LIMIT:
        raise UnsupportedSizeError(f"brute force is limited to k <= {BRUTE_FORCE_LIMIT}, got {k}")
    best: tuple | None = None

    # Recursion always pairs the lowest free vertex first, trying partners in
    # ascending order, so the first optimum found is the lexicographic minimum.
    def rec(free: list[int], acc: list[tuple[int, int]], total: Number) -> None:
        nonlocal best
        if not free:
            if best is None or total < best[0]:
                best = (total, tuple(acc))
            return
        i = free[0]
        for idx in range(1, len(free)):
            j = free[idx]
            acc.append((i, j))
            rec(free[1:idx] + free[idx + 1:], acc, total + w[i][j])
            acc.pop()

    rec(list(range(k)), [], 0)
    assert best is not None
    return PairMatching(best[1], best[0])


def max_weight_matching(nvertex: int, edges: list[tuple[int, int, int]]) -> list[int]:
    """Maximum-weight matching for positive integer edge weights.

    Returns ``mate`` with ``mate[v]`` the partner of ``v`` or -1. Edge
    endpoints are addressed as ``p = 2 * edge + side``; ``endpoint[p]`` is
    the vertex and ``p ^ 1`` the opposite end. Blossoms are numbered
    ``nvertex .. 2 * nvertex - 1``. Labels: 1 = S (outer), 2 = T (inner),
    bit 4 marks vertices seen while scanning for a blossom base.
    """
    nedge = len(edges)
    ei = [e[0] for e in edges]
    ej = [e[1] for e in edges]
    ew2 = [2 * e[2] for e in edges]
    endpoint = [edges[p // 2][p % 2] for p in range(2 * nedge)]
    neighbend: list[list[int]] = [[] for _ in range(nvertex)]
    for k in range(nedge):
        neighbend[ei[k]].append(2 * k + 1)
        neighbend[ej[k]].append(2 * k)
    maxweight = max([0] + [e[2] for e in edges])

    mate = [-1] * nvertex
    label = [0] * (2 * nvertex)
    labelend = [-1] * (2 * nvertex)
    inblossom = list(range(nvertex))
    blossomparent = [-1] * (2 * nvertex)
    blossomchilds: list = [None] * (2 * nvertex)
    blossombase = list(range(nvertex)) + [-1] * nvertex
    blossomendps: list = [None] * (2 * nvertex)
    bestedge = [-1] * (2 * nvertex)
    blossombestedges: list = [None] * (2 * nvertex)
    unusedblossoms = list(range(nvertex, 2 * nvertex))
    dualvar = [maxweight] * nvertex + [0] * nvertex
    allowedge = [False] * nedge
    queue: list[int] = []

    def slack(k: int) -> int:
        return dualvar[ei[k]] + dualvar[ej[k]] - ew2[k]

    def leaves(b: int):
        if b < nvertex:
            yield b
        else:
            for t in blossomchilds[b]:
                if t < nvertex:
                    yield t
                else:
                    yield from leaves(t)

    def assign_label(w: int, t: int, p: int) -> None:
        b = inblossom[w]
        label[w] = label[b] = t
        labelend[w] = labelend[b] = p
        bestedge[w] = bestedge[b] = -1
        if t == 1:
            queue.extend(leaves(b))
        else:
            base = blossombase[b]
            assign_label(endpoint[mate[base]], 1, mate[base] ^ 1)

    def scan_blossom(v: int, w: int) -> int:
        # Walk up from v and w alternately; the first doubly-seen base closes a blossom.
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(base: int, k: int) -> None:
        v, w = ei[k], ej[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        blossomchilds[b] = path = []
        blossomendps[b] = endps = []
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        label[b] = 1
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        for v in leaves(b):
            if label[inblossom[v]] == 2:
                queue.append(v)
            inblossom[v] = b
        bestedgeto = [-1] * (2 * nvertex)
        for bv in path:
            if blossombestedges[bv] is None:
                nblists = [[p // 2 for p in neighbend[v]] for v in leaves(bv)]
            else:
                nblists = [blossombestedges[bv]]
            for nblist in nblists:
                for kk in nblist:
                    i, j = ei[kk], ej[kk]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if bj != b and label[bj] == 1 and (
                        bestedgeto[bj] == -1 or slack(kk) < slack(bestedgeto[bj])
                    ):
                        bestedgeto[bj] = kk
            blossombestedges[bv] = None
            bestedge[bv] = -1
        blossombestedges[b] = [kk for kk in bestedgeto if kk != -1]
        bestedge[b] = -1
        for kk in blossombestedges[b]:
            if bestedge[b] == -1 or slack(kk) < slack(bestedge[b]):
                bestedge[b] = kk

    def expand_blossom(b: int, endstage: bool) -> None:
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < nvertex:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expand_blossom(s, endstage)
            else:
                for v in leaves(s):
                    inblossom[v] = s
        if not endstage and label[b] == 2:
            # Relabel the even-length path from the entry child to the base.
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            j = blossomchilds[b].index(entrychild)
            if j & 1:
                j -= len(blossomchilds[b])
                jstep, endptrick = 1, 0
            else:
                jstep, endptrick = -1, 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[blossomendps[b][j - endptrick] ^ endptrick ^ 1]] = 0
                assign_label(endpoint[p ^ 1], 2, p)
                allowedge[blossomendps[b][j - endptrick] // 2] = True
                j += jstep
                p = blossomendps[b][j - endptrick] ^ endptrick
                allowedge[p // 2] = True
                j += jstep
            bv = blossomchilds[b][j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while blossomchilds[b][j] != entrychild:
                bv = blossomchilds[b][j]
                if label[bv] == 1:
                    j += jstep
                    continue
                v = -1
                for v in leaves(bv):
                    if label[v] != 0:
                        break
                if label[v] != 0:
                    label[v] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    assign_label(v, 2, labelend[v])
                j += jstep
        label[b] = labelend[b] = -1
        blossomchilds[b] = blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b: int, v: int) -> None:
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= nvertex:
            augment_blossom(t, v)
        i = j = blossomchilds[b].index(t)
        if i & 1:
            j -= len(blossomchilds[b])
            jstep, endptrick = 1, 0
        else:
            jstep, endptrick = -1, 1
        while j != 0:
            j += jstep
            t = blossomchilds[b][j]
            p = blossomendps[b][j - endptrick] ^ endptrick
            if t >= nvertex:
                augment_blossom(t, endpoint[p])
            j += jstep
            t = blossomchilds[b][j]
            if t >= nvertex:
                augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = blossomchilds[b][i:] + blossomchilds[b][:i]
        blossomendps[b] = blossomendps[b][i:] + blossomendps[b][:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]

    def augment_matching(k: int) -> None:
        for s, p in ((ei[k], 2 * k + 1), (ej[k], 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= nvertex:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= nvertex:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    for _stage in range(nvertex):
        label[:] = [0] * (2 * nvertex)
        bestedge[:] = [-1] * (2 * nvertex)
        blossombestedges[nvertex:] = [None] * nvertex
        allowedge[:] = [False] * nedge
        queue[:] = []
        for v in range(nvertex):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                assign_label(v, 1, -1)
        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                for p in neighbend[v]:
                    k = p // 2
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == 0:
                            assign_label(w, 2, p ^ 1)
                        elif label[inblossom[w]] == 1:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break

            # No augmenting path with current duals: pick the smallest dual step.
            deltatype = 1
            delta = min(dualvar[:nvertex])
            deltaedge = deltablossom = -1
            for v in range(nvertex):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = slack(bestedge[v])
                    if d < delta:
                        delta, deltatype, deltaedge = d, 2, bestedge[v]
            for b in range(2 * nvertex):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    d = slack(bestedge[b]) // 2
                    if d < delta:
                        delta, deltatype, deltaedge = d, 3, bestedge[b]
            for b in range(nvertex, 2 * nvertex):
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == 2
                    and dualvar[b] < delta
                ):
                    delta, deltatype, deltablossom = dualvar[b], 4, b

            for v in range(nvertex):
                lb = label[inblossom[v]]
                if lb == 1:
                    dualvar[v] -= delta
                elif lb == 2:
                    dualvar[v] += delta
            for b in range(nvertex, 2 * nvertex):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            if deltatype == 2:
                allowedge[deltaedge] = True
                i, j = ei[deltaedge], ej[deltaedge]
                if label[inblossom[i]] == 0:
                    i = j
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                queue.append(ei[deltaedge])
            else:
                expand_blossom(deltablossom, False)
        if not augmented:
            break
        for b in range(nvertex, 2 * nvertex):
            if (
                blossomparent[b] == -1
                and blossombase[b] >= 0
                and label[b] == 1
                and dualvar[b] == 0
            ):
                expand_blossom(b, True)

    return [endpoint[p] if p >= 0 else -1 for p in mate]
