"""Published dimension / vertex / facet counts of P(a, b, c).

Values as reported for the five instances computed with polymake. Rows
(2,3,5) and (2,3,7) are recomputed by default; the others are checked
against the closed-form facet lower bound unless a full run is requested.
"""

TABLE1 = {
    (2, 3, 5): {"dim": 21, "vertices": 30, "facets": 211},
    (2, 3, 7): {"dim": 29, "vertices": 42, "facets": 797},
    (2, 5, 7): {"dim": 45, "vertices": 70, "facets": 3839},
    (2, 5, 9): {"dim": 57, "vertices": 90, "facets": 15373},
    (3, 4, 5): {"dim": 35, "vertices": 60, "facets": 29387},
}

RECOMPUTED_ROWS = ((2, 3, 5), (2, 3, 7))
