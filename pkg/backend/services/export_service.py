"""
Export service for CSV and Excel files
"""
import io
from typing import List, Dict, Any, Optional
import pandas as pd
from openpyxl.utils import get_column_letter

EMPTY_MESSAGE = "No data to export"


def _frame(
    rows: List[Dict[str, Any]],
    columns: Optional[List[str]] = None,
    column_names: Optional[Dict[str, str]] = None
) -> pd.DataFrame:
    """Report rows as a DataFrame, columns selected and renamed."""
    if columns:
        df = pd.DataFrame([{col: row.get(col, '') for col in columns} for row in rows], columns=columns, dtype=object)
    else:
        df = pd.DataFrame(rows, dtype=object)
    if column_names:
        df = df.rename(columns=column_names)
    return df


def _cell(value: Any) -> Any:
    # booleans as lowercase so pass columns diff cleanly
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return value


def export_to_csv(
    rows: List[Dict[str, Any]],
    columns: Optional[List[str]] = None,
    column_names: Optional[Dict[str, str]] = None,
    bom: bool = False
) -> io.BytesIO:
    """
    Export report rows to CSV format.
    Returns a BytesIO object containing the CSV data.

    Args:
        rows: List of row dictionaries (e.g. CountReport.to_rows())
        columns: Optional list of columns to include (in order)
        column_names: Optional dict mapping column keys to display names
        bom: Prefix a UTF-8 byte order mark (Excel opens the file as UTF-8)
    """
    output = io.BytesIO()
    if not rows:
        output.write(EMPTY_MESSAGE.encode())
        output.seek(0)
        return output

    df = _frame(rows, columns, column_names).map(_cell)
    text = df.to_csv(index=False, lineterminator='\n')
    output.write(text.encode('utf-8-sig' if bom else 'utf-8'))
    output.seek(0)
    return output


def export_to_excel(
    rows: List[Dict[str, Any]],
    columns: Optional[List[str]] = None,
    column_names: Optional[Dict[str, str]] = None,
    sheet_name: str = "Counts"
) -> io.BytesIO:
    """
    Export report rows to Excel format.
    Returns a BytesIO object containing the Excel data.
    """
    df = _frame(rows, columns, column_names) if rows else pd.DataFrame({"Message": [EMPTY_MESSAGE]})

    output = io.BytesIO()
    with pd.ExcelWriter(output, engine='openpyxl') as writer:
        df.to_excel(writer, index=False, sheet_name=sheet_name)

        # Auto-adjust column widths
        worksheet = writer.sheets[sheet_name]
        for idx, col in enumerate(df.columns):
            width = max(df[col].astype(str).map(len).max(), len(str(col))) + 2
            worksheet.column_dimensions[get_column_letter(idx + 1)].width = min(width, 50)

    output.seek(0)
    return output


def write_export(path: str, payload: io.BytesIO) -> None:
    with open(path, 'wb') as f:
        f.write(payload.getvalue())
