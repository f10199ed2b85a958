//! Workspace-level acceptance suite; see `tests/acceptance.rs`.
