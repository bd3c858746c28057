"""Reference values the pipeline is checked against.

Each constant is a verbatim transcription of a published table or series (or,
where flagged, the corrected form of one with its recorded discrepancy).  The
CLI compares computed results against these and treats any mismatch that is
not covered by a recorded discrepancy as a hard failure.
"""

from .abelian import AbelianGroup, PoincareSeries


def _g(spec):
    """'Z', 'Z/2', 'Z+Z/3+Z/3', '0' -> AbelianGroup."""
    if spec == "0":
        return AbelianGroup()
    free = 0
    torsion = []
    for part in spec.split("+"):
        part = part.strip()
        if part == "Z":
            free += 1
        elif part.startswith("Z^"):
            free += int(part[2:])
        else:
            torsion.append(int(part.split("/")[1]))
    return AbelianGroup.from_cyclic_orders([0] * free + torsion)


def table(*specs):
    return [_g(s) for s in specs]


# group cohomology of the symmetric group on three letters ------------------

def s3_trivial(d):
    if d == 0:
        return _g("Z")
    if d % 4 == 0:
        return _g("Z/6")
    if d % 4 == 2:
        return _g("Z/2")
    return _g("0")


def s3_standard(d):
    return _g("Z/3") if d % 4 == 3 else _g("0")


def s3_sign(d):
    if d == 0:
        return _g("0")
    if d % 2 == 1:
        return _g("Z/2")
    if d % 4 == 2:
        return _g("Z/3")
    return _g("0")


def s3_standard_standard(d):
    if d == 0:
        return _g("Z")
    return _g("Z/3") if d % 4 == 2 else _g("0")


def s3_standard_sign(d):
    return _g("Z/3") if d % 4 == 1 else _g("0")


S3_COHOMOLOGY = {
    "trivial": s3_trivial,
    "standard": s3_standard,
    "sign": s3_sign,
    "standard(x)standard": s3_standard_standard,
    "standard(x)sign": s3_standard_sign,
}


# unordered flag threefold ---------------------------------------------------

FLBAR3_P3 = table("Z", "0", "0", "0", "Z/3", "Z/3", "0")
FLBAR3_P2 = table("Z", "0", "Z/2", "0", "Z/2", "0", "Z/2")
FLBAR3_P3_SERIES = PoincareSeries([1, 0, 0, 1, 2, 1])
FLBAR3_P2_SERIES = PoincareSeries([1, 1, 1, 1, 1, 1, 1])

# twisted square of the flag threefold ---------------------------------------

FL3XFL3_P3 = table("Z", "0", "0", "0", "Z + Z/3", "Z/3 + Z/3", "Z^2 + Z/3",
                   "Z/3", "Z + Z/3 + Z/3", "Z/3", "0", "0", "Z")
FL3XFL3_P2 = table("Z", "0", "Z/2", "0", "Z + Z/2", "0", "Z^2 + Z/2", "Z/2",
                   "Z", "Z/2", "0", "Z/2", "Z")
FL3XFL3_P2_SERIES = PoincareSeries([1, 1, 1, 1, 2, 1, 4, 1, 2, 1, 1, 1, 1])
# derived by universal coefficients from the table above; the printed
# corollary repeats its degree-4 term where the degree-8 term belongs
FL3XFL3_P3_SERIES = PoincareSeries([1, 0, 0, 1, 4, 3, 4, 3, 4, 1, 0, 0, 1])
FL3XFL3_P3_SERIES_PRINTED_NOTE = (
    "printed series has '4t^4' where the palindromic universal-coefficient "
    "conversion gives 4t^8; the derived series is emitted")

# blockwise-torus quotient of the unitary group ------------------------------

U3T2_P2_SERIES = PoincareSeries([1, 0, 1, 0, 0, 1, 0, 1])
U3T2_P3_SERIES = PoincareSeries([1, 0, 1, 1, 1, 1, 0, 1])
U3T2_P2_RELATIONS = {"z5^2", "b^2"}
U3T2_P3_RELATIONS = {"z3^2", "b^3"}

PU3_P2_SERIES = PoincareSeries([1, 0, 0, 1, 0, 1, 0, 0, 1])
PU3_P3_SERIES = PoincareSeries([1, 1, 1, 2, 2, 2, 1, 1, 1])

# seven diagram spaces, mod-2 series (printed) -------------------------------

DIAGRAM_SERIES_P2 = {
    0: [1, 0, 0, 1, 0, 1, 0, 0, 1],
    1: [1, 0, 2, 0, 2, 1, 1, 2, 0, 2, 0, 1],
    2: [1, 1, 1, 1, 2, 1, 4, 1, 2, 1, 1, 1, 1],
    3: [1, 0, 1, 1, 1, 2, 0, 2, 1, 1, 1, 0, 1],
    4: [1, 1, 1, 2, 2, 3, 3, 2, 3, 3, 2, 2, 1, 1, 1],
    5: [1, 1, 2, 2, 2, 3, 3, 3, 3, 2, 2, 2, 1, 1],
    6: [1, 1, 1, 2, 2, 3, 3, 2, 3, 3, 2, 2, 1, 1, 1],
}

# published higher-limit column lists ----------------------------------------

E2_COLUMNS_P2 = {
    "lim0": {0: 1, 4: 1, 5: 1, 6: 2},
    "lim1": {3: 1, 5: 1, 7: 2, 8: 1, 11: 1, 12: 1, 13: 1},
}
E2_COLUMNS_P3 = {
    "lim0": {0: 1, 4: 1, 5: 1, 6: 1},
    "lim1": {3: 1, 5: 2, 6: 1, 7: 3, 8: 2, 9: 3, 10: 3, 11: 2, 12: 1},
}

# the k = 0, 3, 4 cosimplicial shapes and outcomes worked in the source
WORKED_SHAPES_P2 = {0: (7, 12, 6), 3: (9, 22, 12), 4: (11, 22, 12)}
WORKED_LIMS_P2 = {0: (1, 0), 3: (0, 1), 4: (1, 0)}

# final answers ---------------------------------------------------------------

ECOM_U3_MOD2 = [1, 0, 0, 0, 2, 1, 3, 0, 2, 1, 0, 0, 1, 1, 1]
ECOM_U3_MOD3 = [1, 0, 0, 0, 2, 1, 3, 1, 3, 2, 3, 3, 2, 1, 0]
RATIONAL_SERIES = PoincareSeries([1, 0, 0, 0, 1, 0, 2, 0, 1, 0, 0, 0, 1])

# the mod-2 column entries that are incompatible with the printed series of
# the seven spaces (Euler characteristic of the cosimplicial complex); the
# bundled data realizes the forced values instead
E2_COLUMNS_P2_FORCED_DEVIATIONS = {5: (1, 3), 10: (0, 2), 11: (1, 1)}
ECOM_U3_MOD2_FORCED_DEVIATIONS = {6: 5, 11: 3}
