"""Regenerates corpus.jsonl and truth.jsonl for the mini-corpus.

Labels come from the directory layout: java/<algorithm>/<positive|negative>/.
Files under java/unlabeled/ are part of the corpus but have no labels.

    python3 data/mini_corpus/build_truth.py build/tools/algorec
"""
import json
import pathlib
import subprocess
import sys

here = pathlib.Path(__file__).resolve().parent
tool = sys.argv[1] if len(sys.argv) > 1 else "algorec"
corpus = here / "corpus.jsonl"
subprocess.run([tool, "-q", "extract", "--input", str(here / "java"), "--out", str(corpus)],
               check=True, stdout=subprocess.DEVNULL)
corpus.with_name("corpus.jsonl.manifest.json").unlink(missing_ok=True)

with open(corpus) as f, open(here / "truth.jsonl", "w") as out:
    for line in f:
        rec = json.loads(line)
        parts = pathlib.PurePosixPath(rec["file_path"]).parts
        if parts[0] == "unlabeled":
            continue
        out.write(json.dumps({"method_id": rec["method_id"], "algorithm": parts[0],
                              "label": parts[1]}) + "\n")
