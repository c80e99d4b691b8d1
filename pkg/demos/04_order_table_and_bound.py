"""The simple-group order table and the quotient-order bound."""

from braidquot.catalog import verify_order_table
from braidquot.report import bound, prior_bound

for row in verify_order_table():
    mark = "  <- printed value differs" if row.flagged else ""
    print(f"{row.name:14} printed {row.printed:6}  computed {row.computed:6}{mark}")

for n in range(5, 13):
    print(n, bound(n), prior_bound(n))
