"""Pure-Python versions of the hot kernels.

Signatures match the compiled ``_kernels`` module exactly; see ``kernels.py``
for the selection logic.
"""


def sieve_box(coeffs, x_lo, x_hi, radius, cap, height2, out, fast_radius, slow_eval):
    """Mark ``out[v] = 1`` for every value ``0 <= v <= cap`` of the form on the box.

    The box is ``x_lo <= x <= x_hi``, ``|y| <= radius``. With ``height2`` set,
    pairs with ``max(|x|, |y|) < 2`` are skipped. ``fast_radius`` and
    ``slow_eval`` exist for the compiled kernel's overflow handling and are
    ignored here. Returns the number of pairs evaluated.
    """
    d = len(coeffs) - 1
    lead = coeffs[d]
    tail = coeffs[d - 1 :: -1] if d else ()
    pairs = 0
    for x in range(x_lo, x_hi + 1):
        ax = abs(x)
        for y in range(-radius, radius + 1):
            if height2 and ax < 2 and -2 < y < 2:
                continue
            pairs += 1
            h = lead
            yp = 1
            for c in tail:
                yp *= y
                h = h * x + c * yp
            if 0 <= h <= cap:
                out[h] = 1
    return pairs


def residue_image(coeffs_mod, modulus, out):
    """Mark ``out[r] = 1`` for each residue ``F(a, b) mod M`` over ``0 <= a, b < M``."""
    d = len(coeffs_mod) - 1
    lead = coeffs_mod[d]
    tail = coeffs_mod[d - 1 :: -1] if d else ()
    for a in range(modulus):
        for b in range(modulus):
            h = lead
            yp = 1
            for c in tail:
                yp = yp * b % modulus
                h = (h * a + c * yp) % modulus
            out[h] = 1
