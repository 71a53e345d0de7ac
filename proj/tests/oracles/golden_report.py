"""Writes tests/golden/mini_report.csv from the hand-derived confusion
matrices in tests/fixtures/mini_corpus_expectations.json (mock backend,
score style, filters none and structural:prominent_feature)."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2]
ALGOS = ["prime_factors", "gcd", "fibonacci", "palindrome", "bubble_sort", "binary_search",
         "transpose_matrix"]
COLUMNS = ["filter", "style", "backend", "algorithm", "ST", "precision", "recall", "f1", "macro_f1",
           "reduction_micro", "reduction_macro", "excluded_TPs"]


def metrics(tp, fp, fn, tn):
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


def main():
    exp = json.loads((ROOT / "tests" / "fixtures" / "mini_corpus_expectations.json").read_text())
    lines = [",".join(COLUMNS)]
    for run_key, filt in (("none", "none"), ("structural", "structural:prominent_feature")):
        run = exp["runs"][run_key]
        per = {a: {st: metrics(*run["confusion"][a][str(st)]) for st in range(1, 5)} for a in ALGOS}
        macro = {st: sum(per[a][st][2] for a in ALGOS) / len(ALGOS) for st in range(1, 5)}
        for a in ALGOS:
            for st in range(1, 5):
                p, r, f = per[a][st]
                lines.append(
                    f"{filt},score,mock,{a},{st},{p:.6f},{r:.6f},{f:.6f},{macro[st]:.6f},"
                    f"{run['reduction_micro']:.6f},{run['reduction_macro']:.6f},"
                    f"{run['excluded_true_positives'][a]}")
    (ROOT / "tests" / "golden" / "mini_report.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
