"""Exact Newton polygons for Artin-Schreier curves and exponential sums.

Submodules
----------
fields    finite fields F_{p^n}: arithmetic, traces, dual bases, enumeration
cyclo     exact arithmetic in Q(zeta_p) and the p-adic valuation
polygon   lower convex hulls, slope multisets, comparison
gnp       residue tables, assignment minima, generic and Hodge polygons
lfun      exponential sums and rank-1 / rank-l L-functions
zeta      Artin-Schreier zeta functions, point counts, ordinariness
genpoly   global generic polynomials over Q and their certificates
dwork     Artin-Hasse coefficients, Dwork-matrix leading terms, Q_M
harness   command line interface and JSON-lines records
"""

__version__ = "0.1.0"
