"""Frozen parameter grids for identity verification.

Each identity has 25 parameter tuples drawn log-uniformly from
``[0.3, 5]`` (seed 20240611, rounded to six significant digits) and kept
only when the direct summation needs at most ``5e6`` terms and its value
is at least ``1e-8`` in magnitude.  Below that the accelerated side is a
cancellation of order-one terms and binary64 rounding alone caps the
relative agreement near seven digits.  The tuples
are stored literally so that reports are reproducible without
regenerating them; bump ``GRID_VERSION`` whenever they change.
"""
from __future__ import annotations

from .identities import REQUIRED, IdentityParams

GRID_VERSION = "1"
GRID_RANGE = (0.3, 5.0)
GRID_SEED = 20240611
MAX_LHS_TERMS = 5e6
MIN_LHS_MAGNITUDE = 1e-8

# parameter order per identity follows identities.REQUIRED
GRID = {
    "schlomilch": (
        (0.511486,),
        (4.99819,),
        (1.5629,),
        (3.14404,),
        (0.633551,),
        (0.411677,),
        (2.73858,),
        (1.29542,),
        (4.17921,),
        (1.83902,),
        (0.52031,),
        (1.25374,),
        (2.01709,),
        (2.70933,),
        (0.67141,),
        (2.78153,),
        (0.981888,),
        (3.25099,),
        (1.59738,),
        (0.466441,),
        (4.15032,),
        (1.84858,),
        (0.430176,),
        (4.01697,),
        (3.75223,),
    ),
    "one_partition": (
        (0.793336,),
        (3.62283,),
        (0.656565,),
        (2.1108,),
        (0.3498,),
        (0.741984,),
        (0.688044,),
        (4.02782,),
        (0.454104,),
        (0.558479,),
        (1.11719,),
        (4.86999,),
        (1.39532,),
        (0.354239,),
        (1.23057,),
        (1.19656,),
        (0.367376,),
        (1.01334,),
        (1.33697,),
        (0.835871,),
        (0.728843,),
        (2.67443,),
        (1.79505,),
        (2.09666,),
        (3.52575,),
    ),
    "one_sum": (
        (1.99735, 1.17216, 0.859695),
        (0.712769, 0.330415, 0.341356),
        (2.1452, 1.93648, 0.759495),
        (1.12164, 4.32046, 4.24756),
        (0.471928, 2.51939, 0.388764),
        (2.69554, 1.22894, 0.875495),
        (2.31457, 1.43235, 2.82956),
        (3.08304, 0.680483, 2.24954),
        (0.554106, 1.23323, 0.74358),
        (1.03213, 2.65741, 0.995357),
        (4.76244, 0.504256, 0.805601),
        (0.398929, 0.312822, 1.38987),
        (1.32446, 1.03373, 0.694366),
        (0.321187, 0.425363, 1.45753),
        (0.566033, 0.597867, 2.94306),
        (1.84158, 0.952073, 2.13134),
        (1.4618, 0.408103, 3.44888),
        (1.27926, 0.788281, 1.19391),
        (0.910768, 1.46156, 0.402792),
        (0.926491, 1.63932, 2.01831),
        (0.442403, 2.06432, 2.58775),
        (3.30723, 0.657328, 0.870127),
        (0.543162, 4.30564, 0.71546),
        (3.05351, 3.15722, 0.352906),
        (1.62262, 1.47768, 0.630023),
    ),
    "two_sum": (
        (1.40095, 1.19078),
        (2.08513, 2.05382),
        (1.80378, 0.655341),
        (0.362986, 2.09911),
        (0.786566, 1.50321),
        (0.674218, 0.992202),
        (1.24547, 0.520927),
        (0.687791, 0.362929),
        (1.27469, 0.649157),
        (2.92264, 1.64585),
        (3.26129, 4.59023),
        (1.54234, 3.88051),
        (0.628069, 3.67846),
        (1.10202, 1.17403),
        (0.431612, 0.420082),
        (0.736336, 2.73556),
        (0.315579, 4.10983),
        (0.400183, 0.720435),
        (2.17978, 2.21197),
        (4.24436, 4.02333),
        (2.14607, 0.324912),
        (0.538303, 0.451373),
        (0.407496, 0.940021),
        (0.301795, 0.825802),
        (0.442128, 2.13159),
    ),
    "two_partition": (
        (1.43711, 1.96693, 3.2637),
        (0.407798, 0.751028, 0.566884),
        (0.496176, 3.58751, 1.28975),
        (0.480989, 0.981239, 3.54288),
        (0.39899, 0.37442, 3.48568),
        (4.96831, 3.4455, 0.514056),
        (0.49805, 3.33517, 2.83638),
        (0.349071, 2.70706, 0.664731),
        (1.44063, 0.88396, 1.21105),
        (0.473087, 0.997519, 1.77779),
        (4.77055, 3.34075, 0.676362),
        (1.22984, 1.56376, 0.71702),
        (0.669145, 0.307665, 1.28414),
        (0.79167, 0.770681, 1.16382),
        (0.682374, 3.2136, 0.402762),
        (0.376344, 3.22942, 1.40861),
        (2.15813, 3.13667, 0.617577),
        (2.34342, 1.95654, 0.89284),
        (1.40875, 0.951613, 2.86773),
        (1.17387, 0.853568, 1.78848),
        (0.693657, 0.739572, 1.61523),
        (2.48395, 0.968673, 0.839092),
        (0.999439, 2.97882, 1.5942),
        (0.306917, 2.57684, 1.58577),
        (0.407082, 0.495017, 4.61672),
    ),
    "three_sum": (
        (0.401779, 0.489571, 1.82502),
        (0.647871, 0.392465, 0.318385),
        (0.618083, 2.50329, 0.304761),
        (4.39885, 0.657316, 3.06749),
        (4.10001, 1.7822, 0.343787),
        (0.31448, 0.607797, 1.85376),
        (0.69817, 0.451965, 0.623132),
        (2.35617, 0.782029, 2.93327),
        (0.504514, 1.08584, 2.04372),
        (0.577729, 0.516565, 1.30246),
        (3.56742, 1.57366, 4.30361),
        (4.0739, 3.25833, 0.374662),
        (4.4878, 2.86395, 3.20764),
        (2.16012, 0.516208, 0.749969),
        (3.3956, 1.76218, 0.322429),
        (1.89461, 2.1222, 1.57331),
        (0.825756, 0.687162, 1.63127),
        (1.37797, 0.737738, 0.957207),
        (1.08409, 1.02461, 1.0095),
        (4.53715, 1.27255, 3.39372),
        (0.561525, 1.12726, 2.87521),
        (0.676834, 1.75358, 4.02427),
        (1.69622, 0.346923, 0.60695),
        (0.699156, 2.76658, 0.584373),
        (0.620616, 1.26761, 1.74224),
    ),
    "three_partition": (
        (3.47453, 0.854621, 0.607577, 1.32954),
        (3.82878, 0.341863, 2.26385, 0.36659),
        (0.857062, 2.11947, 3.12273, 1.38373),
        (0.897818, 2.64463, 0.646878, 0.700479),
        (4.66387, 0.658071, 0.322099, 0.555944),
        (1.75915, 4.58771, 2.32891, 2.80034),
        (4.49324, 1.67798, 1.67906, 2.49376),
        (2.02223, 2.01373, 1.29736, 2.40073),
        (0.721731, 3.44211, 1.78191, 0.611011),
        (0.430109, 3.30478, 1.60163, 0.394133),
        (3.18904, 1.39022, 1.86639, 0.837264),
        (0.373167, 0.324278, 1.24087, 0.64654),
        (1.44146, 0.737544, 4.79825, 3.72417),
        (0.529047, 0.647367, 0.398963, 0.817224),
        (2.68056, 3.37611, 0.813004, 0.944156),
        (0.950671, 0.524086, 0.405967, 0.40403),
        (1.70333, 0.492129, 0.328657, 1.78961),
        (4.27079, 4.99798, 0.842194, 4.16037),
        (1.11415, 1.98603, 1.86113, 1.18881),
        (1.19151, 2.27168, 0.867189, 0.525593),
        (1.67593, 2.20622, 0.366371, 0.333413),
        (3.83419, 2.64584, 1.34892, 0.772625),
        (0.425346, 0.39815, 2.99411, 3.4306),
        (1.78075, 4.86044, 0.860598, 0.514356),
        (3.3954, 0.613582, 2.50688, 0.784695),
    ),
    "three_partition_plus": (
        (0.835894, 2.2154, 1.38991, 0.551661),
        (4.30296, 0.426229, 2.09239, 1.49243),
        (0.416971, 1.71061, 0.937941, 4.45149),
        (0.313131, 3.1368, 1.3728, 3.69714),
        (0.373698, 1.90263, 1.1582, 0.762917),
        (0.715546, 1.82709, 1.45213, 0.535062),
        (1.53974, 0.900314, 0.604794, 0.815796),
        (0.822348, 3.21132, 0.308422, 0.674768),
        (1.87842, 0.97662, 3.12654, 4.55974),
        (1.47891, 2.33479, 0.7707, 2.85044),
        (3.32142, 0.489628, 0.862977, 3.4364),
        (0.857186, 2.1401, 0.60851, 4.57773),
        (2.5808, 2.65256, 0.360078, 0.891014),
        (0.327162, 0.409211, 0.465645, 0.856752),
        (1.37214, 0.34084, 3.70605, 4.66346),
        (1.83755, 0.448021, 1.6707, 1.65647),
        (2.59572, 1.76952, 1.12778, 0.866937),
        (1.53409, 0.765621, 1.60158, 0.366049),
        (2.99173, 1.70148, 2.19741, 4.13669),
        (0.674366, 2.16087, 1.32299, 1.40041),
        (2.42569, 1.92931, 0.626169, 1.39117),
        (2.20861, 2.92045, 0.793259, 3.25105),
        (2.19719, 0.334267, 1.51348, 3.14531),
        (4.91243, 4.52636, 1.47459, 2.69459),
        (1.91078, 0.551753, 2.04477, 1.74658),
    ),
}


def grid_params(name: str) -> list[IdentityParams]:
    """The frozen parameter tuples of ``name`` as :class:`IdentityParams`."""
    keys = REQUIRED[name]
    return [IdentityParams(**dict(zip(keys, row))) for row in GRID[name]]
