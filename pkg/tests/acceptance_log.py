"""One summary line per acceptance criterion, filled in by test_acceptance."""

RESULTS = {}
