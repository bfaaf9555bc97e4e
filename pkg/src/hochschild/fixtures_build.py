"""Generator for the bundled fixture corpus (committed under fixtures/).

Regenerating must be byte-identical to the committed files; the round-trip
test asserts this.  Run `python -m hochschild.fixtures_build [dir]`.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .algebra import regular_bimodule
from .catalog import standard_corpus
from .extensions import TwoCochain
from .io_json import algebra_to_json, bimodule_to_json, cochain_to_json, dumps
from .matrix import Matrix
from .rings import GF, QQ, ZZ


def corpus_documents() -> dict[str, dict]:
    """Every bundled fixture file as (name -> JSON document)."""
    algebras = standard_corpus({"Z": ZZ, "Q": QQ, "F2": GF(2)})
    docs = {f"{name}.json": algebra_to_json(A) for name, A in algebras.items()}

    dual_f2 = algebras["dual_f2"]
    reg = regular_bimodule(dual_f2)
    docs["dual_f2_regular.json"] = bimodule_to_json(reg, algebra_ref="dual_f2.json")

    # the nontrivial class: B(x, x) = 1, all other basis pairs zero
    ring = dual_f2.ring
    mat = Matrix.zeros(ring, 2, 4)
    entries = list(mat.entries)
    entries[0 * 4 + 3] = ring.one  # value coordinate "1" on the pair (x, x)
    nontrivial = TwoCochain(dual_f2, reg, Matrix(ring, 2, 4, tuple(entries)))
    docs["cocycle_dual_f2_xx.json"] = cochain_to_json(
        nontrivial, algebra_ref="dual_f2.json", bimodule_ref="dual_f2_regular.json"
    )

    docs["ext_dual_f2_trivial.json"] = {
        "algebra": "dual_f2.json",
        "bimodule": "dual_f2_regular.json",
        "cocycle": [["0", "0", "0", "0"], ["0", "0", "0", "0"]],
    }
    docs["ext_dual_f2_nontrivial.json"] = {
        "algebra": "dual_f2.json",
        "bimodule": "dual_f2_regular.json",
        "cocycle": [["0", "0", "0", "1"], ["0", "0", "0", "0"]],
    }

    docs["koszul_z_mod2.json"] = {
        "algebra": "scalar_z.json",
        "sequence": [["2"]],
        "module": {"generators": 1, "relations": [["2"]], "action": [[["1"]]]},
    }
    docs["koszul_z_seq23.json"] = {
        "algebra": "scalar_z.json",
        "sequence": [["2"], ["3"]],
        "module": "self",
    }
    return docs


def write_corpus(directory) -> list[str]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in sorted(corpus_documents().items()):
        (out / name).write_text(dumps(doc))
        written.append(name)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "fixtures"
    for name in write_corpus(target):
        print(name)
