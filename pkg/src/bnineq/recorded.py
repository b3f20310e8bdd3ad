"""Empirically recorded band constants.

The two-sided estimates this package tests have unstated constants, so
each band below was measured on the sweep that the verification suites
and the acceptance tests run, then widened by a safety margin. Keys for
``(p, q)`` use floats with ``math.inf`` for infinity.
"""

import math

INF = math.inf

#: best trigonometric witness / ``n^s (1 + (n/s)^{1/p-1/q})``,
#: ``n in {8..128}``, ``s in {1..16}`` (powers of two)
TRIG_BANDS = {
    (1.0, INF): (0.03, 0.15),   # observed 0.0433 .. 0.112
    (1.0, 2.0): (0.06, 0.30),   # observed 0.0880 .. 0.234
    (0.5, 1.0): (0.008, 0.15),  # observed 0.0123 .. 0.106
    (2.0, INF): (0.09, 0.30),   # observed 0.133 .. 0.234
}

#: ``bn_constant_1_inf`` over the same envelope; observed 0.0711 .. 0.169
EXTREMAL_BAND = (0.05, 0.25)

#: concave witness / concave envelope, ``n, s in {4..128}``; observed 0.110 .. 0.219
CONCAVE_BAND = (0.07, 0.30)

#: ``sum k^s c_k <= K * envelope * s_functional(c)``; observed max 0.408
MOMENT_K = 0.5

#: ``||T_c||_1 / s_functional(c)`` over random concave ``c``; observed 4.12 .. 6.28
L1_COEFF_BAND = (4.0, 6.5)

#: ``mean_tail_sum(c) <= K * s_functional(c)``
MEAN_TAIL_K = 3.0

#: lower bounds on the bump witness normalized ratio, ``s in {2..24}``
BUMP_LOWER = {
    (1.0, INF): 0.04,   # observed min 0.0442
    (1.0, 2.0): 0.10,   # observed min 0.105
    (2.0, INF): 0.14,   # observed min 0.151
}

#: shifted-to-plain Hardy quasinorm ratio on atoms and their combinations;
#: observed 1.20 .. 2.15
HARDY_EQUIV_BAND = (1.0, 2.5)

#: ``||H_c(atom)||_p <= C_p``; observed 25.4, 7.23, 4.00
HC_ATOM_BOUND = {1 / 3: 32.0, 1 / 2: 9.0, 1.0: 4.5}

#: ``atom_fourier_moment * s^{1/p} <= C``, ``s in {1..40}``; observed max 1.52
FOURIER_MOMENT_BOUND = 2.0
