# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see _pykernels.py for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double BIG = 1e300


cdef inline int _orient(double px, double py, double qx, double qy,
                        double rx, double ry, double eps) nogil:
    cdef double ux = qx - px, uy = qy - py
    cdef double vx = rx - px, vy = ry - py
    cdef double c = ux * vy - uy * vx
    cdef double lu = hypot(ux, uy), lv = hypot(vx, vy)
    cdef double tol = eps * (lu if lu > lv else lv)
    if c > tol:
        return 1
    if c < -tol:
        return -1
    return 0


cdef int _seg_x(double ax, double ay, double bx, double by,
                double cx, double cy, double dx, double dy, double eps,
                double* out) nogil:
    """Writes up to 2 points into out[0..3]; returns the count."""
    cdef double ex, ey, ll, length, tc, td, lot, hit, gap, t, denom, rx, ry, sx, sy
    cdef double lox, loy, hix, hiy
    cdef int o1, o2, o3, o4
    if (max(ax, bx) < min(cx, dx) - eps or max(cx, dx) < min(ax, bx) - eps
            or max(ay, by) < min(cy, dy) - eps or max(cy, dy) < min(ay, by) - eps):
        return 0
    o1 = _orient(ax, ay, bx, by, cx, cy, eps)
    o2 = _orient(ax, ay, bx, by, dx, dy, eps)
    o3 = _orient(cx, cy, dx, dy, ax, ay, eps)
    o4 = _orient(cx, cy, dx, dy, bx, by, eps)
    if o1 == 0 and o2 == 0:
        ex = bx - ax
        ey = by - ay
        ll = ex * ex + ey * ey
        length = sqrt(ll)
        tc = ((cx - ax) * ex + (cy - ay) * ey) / ll
        td = ((dx - ax) * ex + (dy - ay) * ey) / ll
        if tc <= td:
            lot = tc; lox = cx; loy = cy
            hit = td; hix = dx; hiy = dy
        else:
            lot = td; lox = dx; loy = dy
            hit = tc; hix = cx; hiy = cy
        if not (lot > 0.0):
            lot = 0.0; lox = ax; loy = ay
        if not (hit < 1.0):
            hit = 1.0; hix = bx; hiy = by
        gap = (hit - lot) * length
        if gap < -eps:
            return 0
        out[0] = lox
        out[1] = loy
        if gap <= eps:
            return 1
        out[2] = hix
        out[3] = hiy
        return 2
    if o1 * o2 > 0 or o3 * o4 > 0:
        return 0
    if o1 == 0:
        out[0] = cx; out[1] = cy
        return 1
    if o2 == 0:
        out[0] = dx; out[1] = dy
        return 1
    if o3 == 0:
        out[0] = ax; out[1] = ay
        return 1
    if o4 == 0:
        out[0] = bx; out[1] = by
        return 1
    rx = bx - ax
    ry = by - ay
    sx = dx - cx
    sy = dy - cy
    denom = rx * sy - ry * sx
    t = ((cx - ax) * sy - (cy - ay) * sx) / denom
    out[0] = ax + t * rx
    out[1] = ay + t * ry
    return 1


def edge_intersections(edges, owner, double eps):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] E = np.ascontiguousarray(edges, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ow = np.ascontiguousarray(owner, dtype=np.int64)
    cdef Py_ssize_t n = E.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xmin = np.minimum(E[:, 0], E[:, 2])
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xmax = np.maximum(E[:, 0], E[:, 2])
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ymin = np.minimum(E[:, 1], E[:, 3])
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ymax = np.maximum(E[:, 1], E[:, 3])
    cdef cnp.ndarray[cnp.int64_t, ndim=1] order = np.argsort(xmin, kind="stable").astype(np.int64)
    cdef Py_ssize_t a_pos, b_pos, i, j, lo, hi
    cdef int cnt, k
    cdef double buf[4]
    cdef double limit
    oi, oj, ox, oy = [], [], [], []
    for a_pos in range(n):
        i = order[a_pos]
        limit = xmax[i] + eps
        for b_pos in range(a_pos + 1, n):
            j = order[b_pos]
            if xmin[j] > limit:
                break
            if ow[i] == ow[j]:
                continue
            if ymin[j] > ymax[i] + eps or ymin[i] > ymax[j] + eps:
                continue
            cnt = _seg_x(E[i, 0], E[i, 1], E[i, 2], E[i, 3],
                         E[j, 0], E[j, 1], E[j, 2], E[j, 3], eps, buf)
            if cnt == 0:
                continue
            if i < j:
                lo = i; hi = j
            else:
                lo = j; hi = i
            for k in range(cnt):
                oi.append(lo)
                oj.append(hi)
                ox.append(buf[2 * k])
                oy.append(buf[2 * k + 1])
    return (np.asarray(oi, dtype=np.int64), np.asarray(oj, dtype=np.int64),
            np.asarray(ox, dtype=np.float64), np.asarray(oy, dtype=np.float64))


def convex_containment(px, py, verts, offsets, double eps):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] X = np.ascontiguousarray(px, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] Y = np.ascontiguousarray(py, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.ascontiguousarray(verts, dtype=np.float64).reshape(-1, 2)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t n = X.shape[0], K = off.shape[0] - 1
    cdef cnp.ndarray[cnp.int8_t, ndim=1] state = np.zeros(n, dtype=np.int8)
    cdef Py_ssize_t p, k, s, e, q, q2
    cdef double x0, y0, x1, y1, ax, ay, bx, by, ex, ey, d, dmin
    cdef int st
    cdef cnp.ndarray[cnp.float64_t, ndim=2] boxes = np.empty((max(K, 0), 4))
    for k in range(K):
        s = off[k]; e = off[k + 1]
        x0 = V[s, 0]; x1 = V[s, 0]; y0 = V[s, 1]; y1 = V[s, 1]
        for q in range(s, e):
            x0 = min(x0, V[q, 0]); x1 = max(x1, V[q, 0])
            y0 = min(y0, V[q, 1]); y1 = max(y1, V[q, 1])
        boxes[k, 0] = x0 - eps; boxes[k, 1] = y0 - eps
        boxes[k, 2] = x1 + eps; boxes[k, 3] = y1 + eps
    for p in range(n):
        for k in range(K):
            if state[p] == 2:
                break
            s = off[k]; e = off[k + 1]
            if e - s < 3:
                continue
            if X[p] < boxes[k, 0] or X[p] > boxes[k, 2] or Y[p] < boxes[k, 1] or Y[p] > boxes[k, 3]:
                continue
            dmin = BIG
            for q in range(s, e):
                q2 = q + 1 if q + 1 < e else s
                ax = V[q, 0]; ay = V[q, 1]
                bx = V[q2, 0]; by = V[q2, 1]
                ex = bx - ax; ey = by - ay
                d = (ex * (Y[p] - ay) - ey * (X[p] - ax)) / hypot(ex, ey)
                if d < dmin:
                    dmin = d
                if dmin < -eps:
                    break
            if dmin < -eps:
                st = 0
            elif dmin <= eps:
                st = 1
            else:
                st = 2
            if st > state[p]:
                state[p] = st
    return state


cdef double _clip_area(double* P, int n, double* Q, int m, double* buf1, double* buf2) nogil:
    cdef double* inp = buf1
    cdef double* outp = buf2
    cdef double* tmp
    cdef int cnt = m, k, s, oc, s2
    cdef double ax, ay, bx, by, ex, ey, cx, cy, dx, dy, dc, dd, t, x0, y0, area
    for s in range(m):
        inp[2 * s] = Q[2 * s]
        inp[2 * s + 1] = Q[2 * s + 1]
    for k in range(n):
        if cnt == 0:
            return 0.0
        ax = P[2 * k]; ay = P[2 * k + 1]
        s2 = k + 1 if k + 1 < n else 0
        bx = P[2 * s2]; by = P[2 * s2 + 1]
        ex = bx - ax; ey = by - ay
        oc = 0
        for s in range(cnt):
            cx = inp[2 * s]; cy = inp[2 * s + 1]
            s2 = s + 1 if s + 1 < cnt else 0
            dx = inp[2 * s2]; dy = inp[2 * s2 + 1]
            dc = ex * (cy - ay) - ey * (cx - ax)
            dd = ex * (dy - ay) - ey * (dx - ax)
            if dc >= 0.0:
                outp[2 * oc] = cx; outp[2 * oc + 1] = cy
                oc += 1
            if (dc >= 0.0) != (dd >= 0.0):
                t = dc / (dc - dd)
                outp[2 * oc] = cx + t * (dx - cx); outp[2 * oc + 1] = cy + t * (dy - cy)
                oc += 1
        cnt = oc
        tmp = inp; inp = outp; outp = tmp
    if cnt < 3:
        return 0.0
    x0 = inp[0]; y0 = inp[1]
    area = 0.0
    for s in range(1, cnt - 1):
        area += (inp[2 * s] - x0) * (inp[2 * s + 3] - y0) - (inp[2 * s + 2] - x0) * (inp[2 * s + 1] - y0)
    area *= 0.5
    return area if area > 0.0 else 0.0


cdef double _separation(double* P, int n, double* Q, int m) nogil:
    cdef double best = -BIG, dmin, d, ax, ay, bx, by, ex, ey, ln
    cdef int k, s, k2, r
    cdef double* R
    cdef double* S
    cdef int nr, ns
    for r in range(2):
        if r == 0:
            R = P; nr = n; S = Q; ns = m
        else:
            R = Q; nr = m; S = P; ns = n
        for k in range(nr):
            k2 = k + 1 if k + 1 < nr else 0
            ax = R[2 * k]; ay = R[2 * k + 1]
            bx = R[2 * k2]; by = R[2 * k2 + 1]
            ex = bx - ax; ey = by - ay
            ln = hypot(ex, ey)
            dmin = BIG
            for s in range(ns):
                d = -(ex * (S[2 * s + 1] - ay) - ey * (S[2 * s] - ax)) / ln
                if d < dmin:
                    dmin = d
            if dmin > best:
                best = dmin
    return best


cdef _pairwise(a_verts, a_off, b_verts, b_off, tx, ty, int mode):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] AV = np.ascontiguousarray(a_verts, dtype=np.float64).reshape(-1, 2)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] AO = np.ascontiguousarray(a_off, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] BV = np.ascontiguousarray(b_verts, dtype=np.float64).reshape(-1, 2)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] BO = np.ascontiguousarray(b_off, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] TX = np.ascontiguousarray(tx, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] TY = np.ascontiguousarray(ty, dtype=np.float64)
    cdef Py_ssize_t M = TX.shape[0], KA = AO.shape[0] - 1, KB = BO.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] res = np.empty(M)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] abox = np.empty((max(KA, 1), 4))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] bbox = np.empty((max(KB, 1), 4))
    cdef Py_ssize_t i, j, q, mm, s, e
    cdef int na, nb, maxv = 0
    cdef double dx, dy, total, val, qx0, qy0, qx1, qy1
    for i in range(KA):
        s = AO[i]; e = AO[i + 1]
        abox[i, 0] = AV[s, 0]; abox[i, 2] = AV[s, 0]; abox[i, 1] = AV[s, 1]; abox[i, 3] = AV[s, 1]
        for q in range(s, e):
            abox[i, 0] = min(abox[i, 0], AV[q, 0]); abox[i, 2] = max(abox[i, 2], AV[q, 0])
            abox[i, 1] = min(abox[i, 1], AV[q, 1]); abox[i, 3] = max(abox[i, 3], AV[q, 1])
        maxv = max(maxv, <int>(e - s))
    for j in range(KB):
        s = BO[j]; e = BO[j + 1]
        bbox[j, 0] = BV[s, 0]; bbox[j, 2] = BV[s, 0]; bbox[j, 1] = BV[s, 1]; bbox[j, 3] = BV[s, 1]
        for q in range(s, e):
            bbox[j, 0] = min(bbox[j, 0], BV[q, 0]); bbox[j, 2] = max(bbox[j, 2], BV[q, 0])
            bbox[j, 1] = min(bbox[j, 1], BV[q, 1]); bbox[j, 3] = max(bbox[j, 3], BV[q, 1])
        maxv = max(maxv, <int>(e - s))
    cdef int cap = 4 * maxv + 8
    cdef double* Qt = <double*> malloc(2 * cap * sizeof(double))
    cdef double* b1 = <double*> malloc(2 * cap * sizeof(double))
    cdef double* b2 = <double*> malloc(2 * cap * sizeof(double))
    cdef double* Pbuf = <double*> malloc(2 * cap * sizeof(double))
    try:
        for mm in range(M):
            dx = TX[mm]; dy = TY[mm]
            total = 0.0 if mode == 0 else BIG
            for j in range(KB):
                qx0 = bbox[j, 0] + dx; qy0 = bbox[j, 1] + dy
                qx1 = bbox[j, 2] + dx; qy1 = bbox[j, 3] + dy
                nb = <int>(BO[j + 1] - BO[j])
                for q in range(nb):
                    Qt[2 * q] = BV[BO[j] + q, 0] + dx
                    Qt[2 * q + 1] = BV[BO[j] + q, 1] + dy
                for i in range(KA):
                    if mode == 0:
                        if abox[i, 0] >= qx1 or qx0 >= abox[i, 2] or abox[i, 1] >= qy1 or qy0 >= abox[i, 3]:
                            continue
                    else:
                        if abox[i, 0] > qx1 or qx0 > abox[i, 2] or abox[i, 1] > qy1 or qy0 > abox[i, 3]:
                            continue
                    na = <int>(AO[i + 1] - AO[i])
                    for q in range(na):
                        Pbuf[2 * q] = AV[AO[i] + q, 0]
                        Pbuf[2 * q + 1] = AV[AO[i] + q, 1]
                    if mode == 0:
                        total += _clip_area(Pbuf, na, Qt, nb, b1, b2)
                    else:
                        val = _separation(Pbuf, na, Qt, nb)
                        if val < total:
                            total = val
            res[mm] = total
    finally:
        free(Qt); free(b1); free(b2); free(Pbuf)
    return res


def overlap_areas(a_verts, a_off, b_verts, b_off, tx, ty):
    return _pairwise(a_verts, a_off, b_verts, b_off, tx, ty, 0)


def min_separation(a_verts, a_off, b_verts, b_off, tx, ty):
    return _pairwise(a_verts, a_off, b_verts, b_off, tx, ty, 1)
