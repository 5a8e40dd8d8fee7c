"""Numerical constants shared by every module.

All conventions that depend on a choice of root of unity live here so that
the representation, the state sum and the probability formula cannot drift
apart.
"""

import cmath
import math

#: Loop value of the unitary Temperley-Lieb path model, [2]_5 = 2 cos(pi/5).
DELTA = (1.0 + math.sqrt(5.0)) / 2.0

#: Kauffman variable of the unitary braid representation.  It satisfies
#: -A^2 - A^-2 = DELTA, so rho(sigma) = A*1 + A^-1*e is unitary.
A = cmath.exp(3j * math.pi / 5)

#: Kauffman variable used for Jones evaluation, a = exp(i*pi/10).  With
#: V_L(t) = (-a^3)^(-w) <L>_a and t = a^4 = exp(2*pi*i/5) the unknot gives 1
#: and the 2-component unlink gives -[2]_5.
JONES_A = cmath.exp(1j * math.pi / 10)

#: Root of unity at which V_L is evaluated.
JONES_T = JONES_A**4

#: Loop value of the bracket at JONES_A; equals -DELTA.
JONES_LOOP = -(JONES_A**2) - JONES_A**-2

#: Measurement-formula prefactor 1 / (1 + [2]_5^2).
PROB_PREFACTOR = 1.0 / (1.0 + DELTA**2)

#: BQP acceptance thresholds on the probability of reading |1>.
BQP_ACCEPT = 2.0 / 3.0
BQP_REJECT = 1.0 / 3.0

#: Tolerances.
ALGEBRA_TOL = 1e-10
ORACLE_TOL = 1e-8

#: Largest crossing count accepted by the 2^N state sum.
CROSSING_BUDGET = 22

#: Largest total dimension d**n accepted by the k-code checker.
KCODE_MAX_DIM = 2**12
