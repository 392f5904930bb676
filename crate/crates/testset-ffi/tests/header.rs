use std::process::Command;

#[test]
fn generated_header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/testset.h");
    assert!(std::path::Path::new(header).exists(), "header not generated");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\n\
             int main(void) {{\n\
               TsInstance *inst = 0;\n\
               TsStatus st = ts_instance_from_json(\"{{}}\", &inst);\n\
               (void)st;\n\
               ts_instance_free(inst);\n\
               return 0;\n\
             }}\n"
        ),
    )
    .unwrap();
    let Ok(out) = Command::new("cc").arg("-fsyntax-only").arg(&src).output() else {
        eprintln!("no C compiler available, skipping syntax check");
        return;
    };
    assert!(
        out.status.success(),
        "header does not compile:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
