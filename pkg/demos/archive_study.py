"""
Shortest archives and weakest solutions
=======================================

Enumerate every valid statement within small bounds for three two-input
gates, then check whether some shortest one is also among the weakest.
Parity is the control: nothing can be merged, so the intensional solution
is the extensional one.
"""

from intensional import archive_study, parse_generator

for spec in ("and:2", "or:2", "xor:2"):
    report = archive_study(parse_generator(spec))
    print(f"== {spec}")
    print(report.to_text())
