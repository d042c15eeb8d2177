# Independent oracle for the Kummer pipeline (sympy based).
from sympy import symbols, Rational, expand, factor, Poly, roots, sqrt, Integer
from fractions import Fraction
import itertools

x, y, u, v, Y = symbols('x y u v Y')

def phi(d, a, b, c):
    yy = Y
    xx = -2*yy - d
    return expand(yy**2 + xx*yy + d*yy - (xx**3 + a*xx**2 + b*xx + c))

def disc(d, a, b, c):
    a1, a2, a3, a4, a6 = 1, a, d, b, c
    b2 = a1*a1 + 4*a2; b4 = 2*a4 + a1*a3; b6 = a3*a3 + 4*a6
    b8 = a1*a1*a6 + 4*a2*a6 - a1*a3*a4 + a2*a3*a3 - a4*a4
    return -b2*b2*b8 - 8*b4**3 - 27*b6*b6 + 9*b2*b4*b6

def v2(q):
    q = Fraction(q)
    if q == 0: return 10**9
    n, dd, k = q.numerator, q.denominator, 0
    while n % 2 == 0: n //= 2; k += 1
    while dd % 2 == 0: dd //= 2; k -= 1
    return k

def is_sq2(q):
    q = Fraction(q)
    k = v2(q)
    if k % 2: return False
    unit = q / Fraction(2)**k
    return (unit.numerator * pow(unit.denominator, -1, 8)) % 8 == 1

print("worked curve delta=1, a=0, b=-7, c=5")
d, a, b, c = 1, 0, -7, 5
P = phi(d, a, b, c)
print(" Phi =", P, " factor:", factor(P))
print(" disc =", disc(d, a, b, c))
rts = sorted(roots(Poly(P, Y)).keys(), key=lambda r: (v2(Fraction(str(r))), r))
print(" betas =", rts)
al = [-2*r - d for r in rts]
print(" alphas =", al)
# symbolic substitution: v^2 - u^3 ... with u = 4x - 4 alpha1, v = 4(2y + x + d)
lhs = (4*(2*y + x + d))**2
rhs_u = expand(64*(x**3 + a*x**2 + b*x + c - y**2 - x*y - d*y))  # zero on the curve
U = 4*x - 4*al[0]
diff_poly = expand(lhs + rhs_u)  # = v^2 expressed as a polynomial in x on the curve
cubic_in_u = expand(diff_poly.subs(x, (u + 4*al[0]) / 4))
print(" v^2 as cubic in u:", cubic_in_u, "=", factor(cubic_in_u))
g1, g2 = 4*(al[1] - al[0]), 4*(al[2] - al[0])
print(" gamma1, gamma2 =", g1, g2)
def M(g11, g12, g21, g22):
    return [[1, g11*g12, g21*g22, -g11*g21],
            [g11*g12, 1, g11*g21, g21*(g21-g22)],
            [g21*g22, g11*g21, 1, g11*(g11-g12)],
            [-g11*g21, g21*(g21-g22), g11*(g11-g12), 1]]
m = M(g1, g2, g1, g2)
print(" M =", m)
print(" row verdicts =", [all(is_sq2(Fraction(str(e))) for e in row) for row in m])
print(" printed M (gamma2=-21) verdicts =", [all(is_sq2(Fraction(str(e))) for e in row) for row in M(-3, -21, -3, -21)])

# A single gamma rescaled by a square can change verdicts: search.
print("single-gamma rescale counterexample")
found = None
for g in itertools.product([-3, 5, 1, 9, 17, -7, 13, 3, -15, 25], repeat=4):
    if g[0] == g[1] or g[2] == g[3] or 0 in g: continue
    base = [all(is_sq2(e) for e in r) for r in M(*g)]
    for i in range(4):
        h = list(g); h[i] *= 9
        if [all(is_sq2(e) for e in r) for r in M(*h)] != base:
            found = (g, i, base, [all(is_sq2(e) for e in r) for r in M(*h)]); break
    if found: break
print(" ", found)

# Curves with good reduction at 2 and full 2-torsion over Q_2: count 2-adic
# roots of the monic z-cubic z^3 + A z^2 + 8B z + 64C by brute force mod 2^k.
def roots_mod(coeffs, k):
    mod = 2**k
    return [r for r in range(mod) if sum(cf * r**i for i, cf in enumerate(coeffs)) % mod == 0]

def z_cubic(d, a, b, c):
    p = Poly(phi(d, a, b, c), Y).all_coeffs()  # 8, A, B, C
    A, B, C = [int(t) for t in p[1:]]
    return [64*C, 8*B, A, 1]

def q2_root_count(coeffs, K=24):
    # number of 2-adic roots: residues mod 2^K that survive to 2^(K+4) with distinct clusters
    rs = roots_mod(coeffs, 14)
    clusters = {}
    for r in rs:
        clusters.setdefault(r % 2**7, []).append(r)
    return rs

print("Hensel examples (odd disc, 3 roots in Z_2, not all rational)")
hits = []
for d in (0, 1):
    for a in range(-2, 3):
        for b in range(-6, 7):
            for c in range(-6, 7):
                D = disc(d, a, b, c)
                if D == 0 or D % 2 == 0: continue
                P = Poly(phi(d, a, b, c), Y)
                rat = [r for r in roots(P, filter='Q').keys()]
                nrat = sum(roots(P, filter='Q').values())
                # 2-adic root count via Hensel-style brute force on the z-cubic
                co = z_cubic(d, a, b, c)
                def g(z): return sum(cf * z**i for i, cf in enumerate(co))
                def dg(z): return sum(i * cf * z**(i-1) for i, cf in enumerate(co) if i)
                cnt = 0
                for r in range(2**12):
                    if g(r) % 2**12: continue
                    # count residues mod 2^12 that are in the Hensel basin and canonical
                    vd = v2(dg(r)) if dg(r) else 99
                    vg = v2(g(r)) if g(r) else 99
                    if vg > 2*vd and vd < 5:
                        # distinct roots are counted once per class mod 2^(vd+1)
                        if r < 2**(vd+1): cnt += 1
                if cnt == 3 and nrat < 3:
                    hits.append((d, a, b, c, D, nrat, str(factor(P.as_expr()))))
for h in hits[:10]:
    print(" ", h)
print(" total", len(hits))
notfull = []
for d in (0, 1):
    for a in range(-1, 2):
        for b in range(-3, 4):
            for c in range(-3, 4):
                D = disc(d, a, b, c)
                if D == 0 or D % 2 == 0: continue
                co = z_cubic(d, a, b, c)
                def g(z): return sum(cf * z**i for i, cf in enumerate(co))
                if sum(1 for r in range(2) if g(r) % 2 == 0) < 2 and len(notfull) < 3:
                    notfull.append((d, a, b, c))
print("curves with too few 2-adic roots:", notfull)
