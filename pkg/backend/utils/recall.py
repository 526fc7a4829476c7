"""
Comparison utilities for enumerated counts against their closed forms.
"""


def row_key(row):
    """Identify a count row by (j, k, quantity)."""
    return (row.get('j'), row.get('k'), row.get('quantity', ''))


def compare_counts(rows):
    """
    Mark each row as passing when its enumerated value equals the closed form.

    Args:
        rows: list of dicts with at minimum 'enumerated' and 'closed_form'

    Returns:
        dict with totals, pass rate and the list of failing rows.
    """
    failures = []
    for row in rows:
        row['pass'] = row.get('enumerated') == row.get('closed_form')
        if not row['pass']:
            failures.append({
                'j': row.get('j'),
                'k': row.get('k'),
                'quantity': row.get('quantity', ''),
                'enumerated': row.get('enumerated'),
                'closed_form': row.get('closed_form'),
            })

    total = len(rows)
    passed = total - len(failures)
    pass_rate = passed / total if total > 0 else 0

    return {
        'total': total,
        'passed': passed,
        'failed': len(failures),
        'pass_rate': round(pass_rate, 4),
        'failures': sorted(failures, key=row_key),
    }
