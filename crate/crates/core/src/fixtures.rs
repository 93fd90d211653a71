//! Bundled example knowledge bases.

/// Horses with two named individuals, `spirit` and `buddy`.
pub const HORSES: &str = include_str!("../fixtures/horses.kb");
/// Employees, students and PhD students.
pub const STUDENTS: &str = include_str!("../fixtures/students.kb");
/// Five distinguished concepts in two subclass chains with disjoint `P_i`.
pub const CHAINS: &str = include_str!("../fixtures/chains.kb");
/// Five distinguished concepts, fifty typicality inclusions.
pub const STAFF: &str = include_str!("../fixtures/staff.kb");
pub const EMPTY: &str = include_str!("../fixtures/empty.kb");

/// All fixtures by file stem.
pub const ALL: &[(&str, &str)] = &[
    ("horses", HORSES),
    ("students", STUDENTS),
    ("chains", CHAINS),
    ("staff", STAFF),
    ("empty", EMPTY),
];

/// One representative query per fixture, used for emitted-program snapshots.
pub const QUERIES: &[(&str, &str)] = &[
    ("horses", "T(Horse) <= RunFast"),
    ("students", "T(Employee and Student) <= Young"),
    ("chains", "T(C3 and C5) <= P3"),
    ("staff", "T(Employee and Student) <= Busy"),
    ("empty", "T(C) <= C"),
];

/// Fixture text by file stem.
pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
