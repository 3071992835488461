#![no_main]

use libfuzzer_sys::fuzz_target;
use qinv::io::{data_csv_string, parse_data_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // The importer must never panic on arbitrary input; accepted
        // matrices must survive an export/import cycle bit-exactly.
        if let Ok(matrix) = parse_data_csv(text) {
            let canonical = data_csv_string(&matrix);
            let reparsed = parse_data_csv(&canonical).expect("canonical form reparses");
            assert_eq!(reparsed.rows(), matrix.rows());
            assert_eq!(reparsed.cols(), matrix.cols());
            assert_eq!(reparsed.wavenumber, matrix.wavenumber);
            assert_eq!(reparsed.matrix.entries(), matrix.matrix.entries());
        }
    }
});
