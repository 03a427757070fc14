#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

pub const BIN: &str = env!("CARGO_BIN_EXE_wl-lab");

pub fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Scratch directory holding edge-list files.
pub struct Files {
    dir: TempDir,
}

impl Files {
    pub fn new() -> Files {
        Files { dir: TempDir::new().expect("temp dir") }
    }

    pub fn write(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.dir.path().join(name);
        std::fs::write(&p, text).expect("write input");
        p.display().to_string()
    }

    pub fn path(&self) -> &Path {
        self.dir.path()
    }
}

pub const K3: &str = "3 3\n1 2\n2 3\n1 3\n";
pub const P3: &str = "3 2\n1 2\n2 3\n";
pub const C6: &str = "6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n";
pub const TWO_TRIANGLES: &str = "6 6\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n";
