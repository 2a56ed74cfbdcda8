"""Published reference values used by the acceptance suite.

Metric keys follow ``ontoaqg.metrics.METRICS``. Question keys follow the
CLI strategy names.
"""

METRICS_MAIN = {
    "solar": {"pc": 1, "cr": 0.8, "p": 7, "ir": 0.9, "rd": 0.9, "rr": 0.5, "cn": 1.7,
              "sf": 0.8, "d": 2.3},
    "geography": {"pc": 0.7, "cr": 1, "p": 79, "ir": 0.1, "rd": 0.9, "rr": 0.9, "cn": 2.8,
                  "sf": 0, "d": 1.1},
    "wildlife": {"pc": 0.5, "cr": 0, "p": 0, "ir": 0.8, "rd": 0, "rr": 0, "cn": 0,
                 "sf": 0, "d": 1.9},
}

METRICS_VALIDATION = {
    "music": {"pc": 1, "cr": 0.03, "p": 0.2, "ir": 0.9, "rd": 0, "rr": 0, "cn": 0,
              "sf": 0, "d": 2.2},
    "restaurant": {"pc": 0.8, "cr": 1, "p": 2436, "ir": 0, "rd": 1, "rr": 0.5, "cn": 5.9,
                   "sf": 0, "d": 1},
    "job": {"pc": 1, "cr": 0.8, "p": 517, "ir": 0.1, "rd": 1, "rr": 0.1, "cn": 6,
            "sf": 0, "d": 1.1},
    "pets": {"pc": 1, "cr": 0.2, "p": 0.3, "ir": 0.4, "rd": 0.3, "rr": 0.01, "cn": 0.5,
             "sf": 0.5, "d": 1.5},
}

QUESTIONS = {
    "solar": {"class-membership": 70, "property": 120, "terminology": 4, "annotation": 10,
              "mcq": 8, "multi-entity": 17},
    "geography": {"class-membership": 713, "property": 2044, "terminology": 1,
                  "annotation": 0, "mcq": 0, "multi-entity": 724},
    "wildlife": {"class-membership": 0, "property": 0, "terminology": 25, "annotation": 11,
                 "mcq": 0, "multi-entity": 0},
}
