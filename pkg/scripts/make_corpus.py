"""Regenerate the JSON fixture corpus used by the command-line tests.

    python3 scripts/make_corpus.py [outdir]
"""

import math
import sys
from pathlib import Path

import numpy as np

from skdirac.fixtures import q1, q2, zero_quadruple
from skdirac.quadruple import AdmissibleQuadruple
from skdirac.realization import CONTINUOUS, DISCRETE, StateSpaceRealization
from skdirac.sampling import random_realization, random_strong_quadruple
from skdirac.serialize import dumps, quadruple_to_doc, realization_to_doc


def documents():
    rng = np.random.default_rng(7)
    docs = {
        "q1": quadruple_to_doc(q1()),
        "q2": quadruple_to_doc(q2()),
        "zero": quadruple_to_doc(zero_quadruple(1, 1, 1)),
        "empty": quadruple_to_doc(AdmissibleQuadruple.empty(1, 1)),
        "nonpd": quadruple_to_doc(AdmissibleQuadruple([[1j]], [[-1.0]], [[1.0]], [[1.0]])),
        "strong3": quadruple_to_doc(random_strong_quadruple(rng, 3, 2, 1)),
        "i_over_z": realization_to_doc(StateSpaceRealization([[0]], [[1]], [[1]], CONTINUOUS)),
        "minus_2i_over_z": realization_to_doc(
            StateSpaceRealization([[0]], [[math.sqrt(2)]], [[math.sqrt(2)]], DISCRETE)
        ),
        "zero_function": realization_to_doc(StateSpaceRealization.zero(1, 1, CONTINUOUS)),
        "random_c": realization_to_doc(random_realization(rng, 4, 1, 2, CONTINUOUS)),
        "random_d": realization_to_doc(random_realization(rng, 3, 2, 2, DISCRETE)),
    }
    feed = dict(docs["i_over_z"])
    feed["feedthrough"] = [[[1.0, 0.0]]]
    docs["feedthrough"] = feed
    missing = dict(docs["q1"])
    del missing["theta2"]
    docs["missing_field"] = missing
    return docs


def main(outdir):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, doc in documents().items():
        (outdir / f"{name}.json").write_text(dumps(doc) + "\n")
    (outdir / "malformed.json").write_text('{"schemaVersion": "1", "n": 1,\n')
    print(f"wrote {len(documents()) + 1} documents to {outdir}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "corpus")
