"""CSV and JSON export."""

from darboux_lab.export.csv_files import CsvTable, format_number, write_json, write_tables

__all__ = ["CsvTable", "format_number", "write_json", "write_tables"]
