"""Bundled scenario documents for the command-line front end.

Each entry is a plain JSON-able dict in the input format understood by
parse_scenario, plus a one-line description and the expected verdict.  The
catalog order is fixed; everything here is deterministic data.
"""

from typing import Dict, List, Tuple

# S_3 as an explicit multiplication table (0 = identity); exercises the
# table input path end to end
_S3_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 4, 5, 2, 3],
    [2, 3, 0, 1, 5, 4],
    [3, 2, 5, 4, 0, 1],
    [4, 5, 1, 0, 3, 2],
    [5, 4, 3, 2, 1, 0],
]


def _doc(name, group, coefficients, analyses, **options):
    opts = {"engine": "auto", "window": 6, "max_order": 24}
    opts.update(options)
    return {
        "name": name,
        "group": group,
        "coefficients": coefficients,
        "analyses": analyses,
        "options": opts,
    }


_BUNDLED: List[Tuple[str, str, dict]] = [
    (
        "unramified-cyclic-2",
        "formation PASS; reciprocity isomorphism Z/2 -> Z/2",
        _doc("unramified-cyclic-2",
             {"kind": "cyclic", "n": 2},
             {"kind": "trivial", "shift": 0},
             [{"kind": "formation"}]),
    ),
    (
        "unramified-cyclic-3",
        "formation PASS; reciprocity isomorphism Z/3 -> Z/3",
        _doc("unramified-cyclic-3",
             {"kind": "cyclic", "n": 3},
             {"kind": "trivial", "shift": 0},
             [{"kind": "formation"}]),
    ),
    (
        "unramified-cyclic-6",
        "formation PASS; reciprocity isomorphism Z/6 -> Z/6",
        _doc("unramified-cyclic-6",
             {"kind": "cyclic", "n": 6},
             {"kind": "trivial", "shift": 0},
             [{"kind": "formation"}]),
    ),
    (
        "unramified-cyclic-4-norm-table",
        "formation PASS; norm-group rows match (G/V)^ab for all three "
        "normal subgroups",
        _doc("unramified-cyclic-4-norm-table",
             {"kind": "cyclic", "n": 4},
             {"kind": "trivial", "shift": 0},
             [{"kind": "formation"}, {"kind": "norm-table"}]),
    ),
    (
        "klein-four-z",
        "formation FAIL at (C2): H^2 of the whole group is Z/2 x Z/2, "
        "not cyclic of order 4",
        _doc("klein-four-z",
             {"kind": "product", "factors": [2, 2]},
             {"kind": "trivial", "shift": 0},
             [{"kind": "formation"}],
             window=5),
    ),
    (
        "s3-z",
        "formation FAIL at (C2): H^2 has order 2, not 6",
        _doc("s3-z",
             {"kind": "table", "table": _S3_TABLE},
             {"kind": "trivial", "shift": 0},
             [{"kind": "formation"}],
             window=5),
    ),
    (
        "regular-module-z2",
        "formation FAIL at (C2); every Tate group of Z[G] vanishes",
        _doc("regular-module-z2",
             {"kind": "cyclic", "n": 2},
             {"kind": "regular", "shift": 0},
             [{"kind": "formation"}, {"kind": "tate", "range": [-3, 3]}]),
    ),
    (
        "hilbert90-f4",
        "H^1(Gal(F4/F2), F4*) = 0",
        _doc("hilbert90-f4",
             {"kind": "cyclic", "n": 2},
             {"kind": "finite-field-units", "p": 2, "f": 1, "n": 2,
              "shift": 0},
             [{"kind": "tate", "range": [0, 2]}]),
    ),
    (
        "hilbert90-f9",
        "H^1(Gal(F9/F3), F9*) = 0",
        _doc("hilbert90-f9",
             {"kind": "cyclic", "n": 2},
             {"kind": "finite-field-units", "p": 3, "f": 1, "n": 2,
              "shift": 0},
             [{"kind": "tate", "range": [0, 2]}]),
    ),
    (
        "hilbert90-f8",
        "H^1(Gal(F8/F2), F8*) = 0",
        _doc("hilbert90-f8",
             {"kind": "cyclic", "n": 3},
             {"kind": "finite-field-units", "p": 2, "f": 1, "n": 3,
              "shift": 0},
             [{"kind": "tate", "range": [0, 2]}]),
    ),
    (
        "zeta1-shift-f4",
        "formation FAIL at (C2): H^2 of the shifted module equals "
        "H^1 of the units, which vanishes",
        _doc("zeta1-shift-f4",
             {"kind": "cyclic", "n": 2},
             {"kind": "tensor-power-shift",
              "base": {"kind": "finite-field-units", "p": 2, "f": 1, "n": 2,
                       "shift": 0},
              "power": 1},
             [{"kind": "formation"}]),
    ),
    (
        "cone-les-z2",
        "cone order identity |H(cone m)| = |H/m| * |_m H| holds for "
        "m = 1, 2, 3, 4",
        _doc("cone-les-z2",
             {"kind": "cyclic", "n": 2},
             {"kind": "trivial", "shift": 0},
             [{"kind": "cone-les", "m": m, "range": [-2, 2]}
              for m in (1, 2, 3, 4)]),
    ),
    (
        "tn-cyclic-4",
        "Tate-Nakayama PASS: cup with the fundamental class is an "
        "isomorphism in every degree of [-2, 3]",
        _doc("tn-cyclic-4",
             {"kind": "cyclic", "n": 4},
             {"kind": "trivial", "shift": 0},
             [{"kind": "tate-nakayama", "range": [-2, 3]}]),
    ),
    (
        "tn-klein-reject",
        "Tate-Nakayama hypothesis (ii) rejected: H^2 has no class of "
        "order 4",
        _doc("tn-klein-reject",
             {"kind": "product", "factors": [2, 2]},
             {"kind": "trivial", "shift": 0},
             [{"kind": "tate-nakayama", "range": [-2, 3]}],
             window=5),
    ),
]

_BY_NAME: Dict[str, Tuple[str, dict]] = {
    name: (desc, doc) for name, desc, doc in _BUNDLED
}


def bundled_names() -> List[str]:
    return [name for name, _, _ in _BUNDLED]


def bundled_document(name: str) -> dict:
    if name not in _BY_NAME:
        raise KeyError(name)
    return _BY_NAME[name][1]


def bundled_description(name: str) -> str:
    return _BY_NAME[name][0]


def catalog_lines() -> List[str]:
    out = ["bundled scenarios:"]
    width = max(len(n) for n in bundled_names())
    for name, desc, _ in _BUNDLED:
        out.append("  %-*s  %s" % (width, name, desc))
    return out
