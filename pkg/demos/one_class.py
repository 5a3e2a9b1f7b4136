"""
A classifier from positive examples only
========================================

With no negatives, the weakest statement is TRUE.  Restricting candidate
terms to what subsets of the positives have in common gives something
useful instead.
"""

from intensional import PartialAssignment, evaluate, one_class_learn

positives = [PartialAssignment.parse(z) for z in ("1100", "1101", "1110")]
report = one_class_learn(positives)
print("learned:", report.statement)

for z in ("1111", "0111"):
    print(z, "accepted" if evaluate(report.statement, PartialAssignment.parse(z)) else "rejected")

# Positives with nothing in common fall back to listing them.
report = one_class_learn([PartialAssignment.parse("000"), PartialAssignment.parse("111")])
print("learned:", report.statement, f"(fallback={report.fallback})")
