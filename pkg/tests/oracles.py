"""
Naive reference descriptors.

Pure-Python, per-pixel transcriptions of the descriptor sums using 1-based
frame indices, written without reference to the vectorised kernels. Slow;
only for small stacks.
"""


def _series(stack, y, x):
    # I[1..N] with a dummy slot at 0
    return [None] + [float(frame[y][x]) for frame in stack]


def _per_pixel(stack, fn):
    h, w = len(stack[0]), len(stack[0][0])
    return [[fn(_series(stack, y, x), len(stack)) for x in range(w)] for y in range(h)]


def naive_fujii(stack):
    def f(I, N):
        total = 0.0
        for k in range(1, N):
            den = I[k] + I[k + 1]
            if den != 0:
                total += abs(I[k] - I[k + 1]) / den
        return total
    return _per_pixel(stack, f)


def naive_gd(stack):
    def f(I, N):
        total = 0.0
        for k in range(1, N + 1):
            for l in range(k + 1, N + 1):
                total += abs(I[k] - I[l])
        return total
    return _per_pixel(stack, f)


def naive_mwd(stack, w):
    def f(I, N):
        total = 0.0
        for k in range(1, N - w + 1):
            for l in range(k + 1, k + w + 1):
                total += abs(I[k] - I[l])
        return total
    return _per_pixel(stack, f)


def naive_sf(stack, w):
    def f(I, N):
        total = 0.0
        for k in range(1, N - w + 1):
            total += (I[k] - I[k + w]) ** 2
        return total
    return _per_pixel(stack, f)


def naive_msf(stack, w):
    def f(I, N):
        total = 0.0
        for k in range(1, N - w + 1):
            total += abs(I[k] - I[k + w])
        return total
    return _per_pixel(stack, f)


def column(values):
    """A 1x1 stack from a temporal sequence."""
    return [[[v]] for v in values]
