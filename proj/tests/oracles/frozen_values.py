"""Independent evaluation of the frozen constants used in the unit tests.

Run with `python3 frozen_values.py`; nothing here imports the C++ library.
"""
import math

from scipy import integrate

# transmission rate, K=1, D=2
inner = 0.5 * 2.0 + 1.0 * 0.3
phi = 1.0 - math.exp(-inner)
print("phi(1.3)            =", repr(phi))

# hazard at elapsed time 3 with phi rounded as quoted
print("hazard(0.7274682,3) =", repr(0.7274682 / (3 + 1)))

# log survivor at t - t_j + 1 = e via quadrature of the hazard
val, _ = integrate.quad(lambda x: 0.5 / (x + 1.0), 0.0, math.e - 1.0, epsabs=1e-14)
print("-int hazard         =", repr(-val))

# adadelta first touch with g=1, rho=0.95, eps=1e-6
rho, eps, g = 0.95, 1e-6, 1.0
eg2 = (1 - rho) * g * g
delta = -math.sqrt(0.0 + eps) / math.sqrt(eg2 + eps) * g
edx2 = (1 - rho) * delta * delta
print("adadelta delta      =", repr(delta), " E[g2] =", repr(eg2), " E[dx2] =", repr(edx2))
print("adadelta limit      =", repr(-math.sqrt(eps / (1 - rho))))

# score_pairwise 1/3 at elapsed 2
print("pairwise(1/3, 2)    =", repr((1.0 / 3.0) / 3.0))

# AUC by exhaustive pairwise counting
pos, neg = [0.9, 0.4], [0.5, 0.1]
wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in pos for n in neg)
print("auc                 =", wins / (len(pos) * len(neg)))

# uniform random ranking over 100 candidates: expected reciprocal rank
print("random MRR M=100    =", sum(1.0 / r for r in range(1, 101)) / 100)

# csp closed form toy: phi=1, t_u=0, scale (0,1]
print("csp toy             =", 1 - ((0 - 0 + 1) / (1 - 0 + 1)) ** 1.0)
# closed form equals integral display
phi_ = 0.37; tu = 0.4; a = 1.3; b = 2.9
f = lambda t: phi_ / (t - tu + 1) * (t - tu + 1) ** (-phi_)
num, _ = integrate.quad(f, a, b, epsabs=1e-14)
S = (a - tu + 1) ** (-phi_)
print("csp integral/closed =", num / S, 1 - ((a - tu + 1) / (b - tu + 1)) ** phi_)

# 16^(3/4)
print("16^0.75             =", 16 ** 0.75)
