//! Reading and writing instance and allocation documents.

use chore_division::algorithms::ef1_and_efficient;
use chore_division::io::{parse_allocation, parse_instance, serialize_instance, AllocationDocument};

const TEXT: &str = r#"{
  "version": 1,
  "n": 2,
  "m": 4,
  "agents": [
    { "kind": "partition-complement",
      "blocks": [ { "chores": [0, 1], "cap": 1 }, { "chores": [2, 3], "cap": 1 } ] },
    { "kind": "table", "values": [0, 0, 0, 1, 0, 1, 1, 2, 0, 1, 1, 2, 1, 2, 2, 3] }
  ]
}"#;

fn main() -> chore_division::Result<()> {
    let inst = parse_instance(TEXT)?;
    println!("{}", serialize_instance(&inst));

    let alloc = ef1_and_efficient(&inst)?;
    let doc = AllocationDocument::new(&inst, &alloc);
    let json = doc.to_json();
    println!("{json}");
    assert_eq!(parse_allocation(&json, &inst)?, alloc);

    match parse_instance(r#"{"version":1,"n":1,"m":2,"agents":[{"kind":"table","values":[0,1,1,1]}]}"#) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
