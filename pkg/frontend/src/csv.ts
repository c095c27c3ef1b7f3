import Papa from "papaparse";

/** A parsed CSV: ordered column names plus one record per data row. */
export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

/** Parse CSV text into a Table. Throws on empty input or ragged rows. */
export function parseCsv(text: string, label = "csv"): Table {
  if (text.trim() === "") {
    throw new Error(`${label}: empty CSV`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  for (const err of parsed.errors) {
    throw new Error(`${label}: ${err.message} (row ${err.row})`);
  }
  const columns = parsed.meta.fields ?? [];
  if (columns.length === 0 || (columns.length === 1 && columns[0] === "")) {
    throw new Error(`${label}: empty CSV`);
  }
  if (parsed.data.length === 0) {
    throw new Error(`${label}: no data rows`);
  }
  return { columns, rows: parsed.data };
}

/** Throw a named diagnostic if any required column is absent. */
export function requireColumns(table: Table, needed: string[], label: string): void {
  for (const column of needed) {
    if (!table.columns.includes(column)) {
      throw new Error(`${label}: missing column "${column}"`);
    }
  }
}

/** Read a numeric cell; NaN or absent values are diagnostics, not data. */
export function numberAt(row: Record<string, string>, column: string, label: string): number {
  const raw = row[column];
  const value = Number(raw);
  if (raw === undefined || raw === "" || !Number.isFinite(value)) {
    throw new Error(`${label}: non-numeric value "${raw}" in column "${column}"`);
  }
  return value;
}

/** Distinct values of a column in first-appearance order. */
export function distinct(table: Table, column: string): string[] {
  const seen: string[] = [];
  for (const row of table.rows) {
    const value = row[column] ?? "";
    if (!seen.includes(value)) {
      seen.push(value);
    }
  }
  return seen;
}

/** Rows matching an exact string predicate on one column. */
export function where(table: Table, column: string, value: string): Record<string, string>[] {
  return table.rows.filter((row) => row[column] === value);
}
