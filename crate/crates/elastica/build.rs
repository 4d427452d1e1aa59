use std::process::Command;

fn main() {
    let out = Command::new("git").args(["describe", "--always", "--dirty"]).output();
    if let Ok(o) = out {
        if o.status.success() {
            let s = String::from_utf8_lossy(&o.stdout);
            println!("cargo:rustc-env=ELASTICA_GIT_DESCRIBE={}", s.trim());
        }
    }
    println!("cargo:rerun-if-changed=build.rs");
}
