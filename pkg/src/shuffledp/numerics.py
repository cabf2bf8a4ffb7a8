"""Log-domain scalar helpers used by the accountant hot paths.

Everything here operates on natural logs.  The two softplus-style
functions keep full relative precision near zero, which matters because
the moment sums we take logs of are often 1 + (something around 1e-16):
a plain ``log(exp(x) + 1)`` would destroy exactly the digits the
degeneracy and oracle checks look at.
"""

import math

import numpy as np

LOG2 = math.log(2.0)
LOG4 = math.log(4.0)


def log1pexp(x: float) -> float:
    """log(1 + e^x), stable for x anywhere on the real line."""
    x = float(x)
    if x > 0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def log_expm1(x):
    """log(e^x - 1) for x > 0, elementwise on arrays.

    Near zero e^x - 1 ~ x, so we go through expm1 rather than exp.
    For large x the answer is x to machine precision.
    """
    x = np.asarray(x, dtype=float)
    small = x < 30.0
    with np.errstate(divide="ignore"):
        out = np.where(small, np.log(np.expm1(np.where(small, x, 1.0))), x)
    if out.ndim == 0:
        return float(out)
    return out


def log_binom(n: int, k: int) -> float:
    """log C(n, k) via lgamma; exact enough for all orders we touch."""
    if k < 0 or k > n:
        return -math.inf
    return (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    )


def log_falling_factorial(n: int, length: int) -> float:
    """log of n * (n-1) * ... * (n-length+1), summed term by term.

    The lgamma difference form cancels catastrophically when
    length << n (both lgammas are ~1e5 while the answer's low digits
    matter), so we add the individual logs with fsum instead.
    """
    if length < 0 or length > n:
        raise ValueError(f"length must be in [0, n], got {length} for n={n}")
    return math.fsum(math.log(n - i) for i in range(length))
