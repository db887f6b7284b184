"""Tiny helpers for sparse vectors: plain dicts key -> nonzero Scalar.

Keys are basis indices (ints) or structured tuples; values are scalars.
Zero entries are dropped eagerly so that equality of dicts is equality of
vectors.
"""


def add_into(acc, vec, coeff=None):
    """acc += coeff * vec (in place); acc is a dict, vec a dict."""
    if coeff is not None and coeff.is_zero():
        return acc
    for k, v in vec.items():
        w = v if coeff is None else coeff * v
        if k in acc:
            s = acc[k] + w
            if s.is_zero():
                del acc[k]
            else:
                acc[k] = s
        elif not w.is_zero():
            acc[k] = w
    return acc


def scaled(vec, coeff):
    if coeff.is_zero():
        return {}
    return {k: coeff * v for k, v in vec.items()}


def negated(vec):
    return {k: -v for k, v in vec.items()}


def vec_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] - v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = -v
    return out


def vec_equal(a, b):
    return a == b


def is_zero_vec(vec):
    return not vec


def from_items(items):
    """Accumulate (key, scalar) pairs into a clean sparse vector."""
    out = {}
    for k, v in items:
        if v.is_zero():
            continue
        if k in out:
            s = out[k] + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = v
    return out


def to_dense(vec, dim, field):
    out = [field.zero] * dim
    for k, v in vec.items():
        out[k] = v
    return out


def from_dense(values):
    return {i: v for i, v in enumerate(values) if not v.is_zero()}
