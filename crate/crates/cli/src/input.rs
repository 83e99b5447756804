use std::fs;
use std::path::Path;

use invorder::magma::{parse_table_file, Magma, TableFile};

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn source_name(path: &Path) -> String {
    path.display().to_string()
}

pub fn table(path: &Path) -> Result<TableFile, Failure> {
    Ok(parse_table_file(&read(path)?, &source_name(path))?)
}

pub fn magma(path: &Path) -> Result<Magma, Failure> {
    Ok(table(path)?.magma().clone())
}
