"""Print each reported score row next to the harmonic mean of its precision and recall."""

from caregiver_tweets.metrics import f1_score
from caregiver_tweets.reference import TEST_SCORES, VALIDATION_SCORES

print(f"{'system':<26}{'setting':<18}{'P':>7}{'R':>7}{'F1':>7}{'hm(P,R)':>9}{'diff':>9}")
for row in VALIDATION_SCORES + TEST_SCORES:
    hm = f1_score(row.precision, row.recall)
    flag = "" if abs(hm - row.f1) <= 1e-3 else "  <-- not a per-system row"
    print(
        f"{row.system:<26}{row.setting:<18}{row.precision:>7.3f}{row.recall:>7.3f}{row.f1:>7.3f}"
        f"{hm:>9.4f}{hm - row.f1:>+9.4f}{flag}"
    )
