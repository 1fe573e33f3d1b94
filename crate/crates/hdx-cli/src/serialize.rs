//! Canonical JSON documents for complexes and cochains.
//!
//! Every document is a single line of JSON with alphabetically ordered keys
//! followed by one newline, so each object has exactly one byte encoding.
//! Cochain files carry a 64-bit FNV-1a hash of the canonical complex bytes,
//! letting the tool reject a cochain applied to the wrong complex.

use hdx::complexes::{CellLabel, ComplexZ2};
use hdx::gf2::BitVec;
use serde_json::{json, Value};

/// Format identifier carried by every complex document.
pub const SCHEMA: &str = "hdx/1";

/// A document failed to parse or failed validation.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct FormatError(pub String);

fn err(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

/// Canonical encoding of a complex. Cells are listed by ascending dimension
/// and, within a dimension, in complex order, as `[dim, label, faces]`.
#[must_use]
pub fn complex_to_json(x: &ComplexZ2) -> String {
    let mut cells = Vec::new();
    for k in 0..x.n_levels() {
        for i in 0..x.n_cells(k) {
            cells.push(json!([k, x.label(k, i).to_string(), x.faces(k, i)]));
        }
    }
    let doc = json!({
        "schema": SCHEMA,
        "name": x.name(),
        "dims": x.n_levels(),
        "cells": cells,
        "reduced": x.is_augmented(),
        "void": x.is_void(),
    });
    format!("{doc}\n")
}

/// Decodes a canonical complex document, re-validating the boundary square
/// condition and all structural invariants.
pub fn complex_from_json(text: &str) -> Result<ComplexZ2, FormatError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| err(format!("malformed JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| err("top level must be an object"))?;
    let field = |key: &str| obj.get(key).ok_or_else(|| err(format!("missing field `{key}`")));
    let schema = field("schema")?
        .as_str()
        .ok_or_else(|| err("`schema` must be a string"))?;
    if schema != SCHEMA {
        return Err(err(format!("unsupported schema `{schema}`")));
    }
    let name = field("name")?
        .as_str()
        .ok_or_else(|| err("`name` must be a string"))?
        .to_string();
    let dims = field("dims")?
        .as_u64()
        .ok_or_else(|| err("`dims` must be a non-negative integer"))? as usize;
    let reduced = field("reduced")?
        .as_bool()
        .ok_or_else(|| err("`reduced` must be a boolean"))?;
    let void = field("void")?
        .as_bool()
        .ok_or_else(|| err("`void` must be a boolean"))?;
    let cells_v = field("cells")?
        .as_array()
        .ok_or_else(|| err("`cells` must be an array"))?;
    if void {
        if dims != 0 || !cells_v.is_empty() || reduced {
            return Err(err("a void complex has no cells, no levels and is not reduced"));
        }
        return Ok(ComplexZ2::void_complex(name));
    }
    let mut cells: Vec<Vec<CellLabel>> = vec![Vec::new(); dims];
    let mut boundary: Vec<Vec<Vec<u32>>> = vec![Vec::new(); dims];
    for entry in cells_v {
        let triple = entry
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| err("each cell must be `[dim, label, faces]`"))?;
        let k = triple[0]
            .as_u64()
            .ok_or_else(|| err("cell dimension must be a non-negative integer"))?
            as usize;
        if k >= dims {
            return Err(err(format!("cell dimension {k} outside the declared {dims} levels")));
        }
        let label: CellLabel = triple[1]
            .as_str()
            .ok_or_else(|| err("cell label must be a string"))?
            .parse()
            .map_err(|e| err(format!("bad cell label: {e}")))?;
        if label.dim() != k {
            return Err(err(format!(
                "label `{label}` has dimension {}, listed under dimension {k}",
                label.dim()
            )));
        }
        let faces = triple[2]
            .as_array()
            .ok_or_else(|| err("cell faces must be an array"))?
            .iter()
            .map(|f| {
                f.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| err("face references must be 32-bit indices"))
            })
            .collect::<Result<Vec<u32>, FormatError>>()?;
        cells[k].push(label);
        boundary[k].push(faces);
    }
    ComplexZ2::from_parts(name, cells, boundary, reduced).map_err(|e| err(e.to_string()))
}

/// 64-bit FNV-1a hash of a byte string.
#[must_use]
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Hash of the canonical encoding of a complex, as 16 lowercase hex digits.
#[must_use]
pub fn complex_hash(x: &ComplexZ2) -> String {
    format!("{:016x}", fnv1a64(complex_to_json(x).as_bytes()))
}

/// Packs a bit vector into lowercase hex, one byte per 8 bits, low bit
/// positions in low byte positions and low bits within each byte.
#[must_use]
pub fn bits_to_hex(bits: &BitVec) -> String {
    let n_bytes = bits.len().div_ceil(8);
    let words = bits.words();
    let mut out = String::with_capacity(n_bytes * 2);
    for i in 0..n_bytes {
        let byte = (words[i / 8] >> (8 * (i % 8))) as u8;
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Decodes a hex-packed bit vector of exactly `len` bits, rejecting wrong
/// lengths and nonzero padding bits.
pub fn bits_from_hex(len: usize, hex: &str) -> Result<BitVec, FormatError> {
    let n_bytes = len.div_ceil(8);
    if hex.len() != n_bytes * 2 {
        return Err(err(format!(
            "expected {} hex digits for {len} bits, found {}",
            n_bytes * 2,
            hex.len()
        )));
    }
    let mut bits = BitVec::zeros(len);
    for i in 0..n_bytes {
        let byte = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16)
            .map_err(|_| err("bits must be lowercase hex"))?;
        if hex[2 * i..2 * i + 2].chars().any(|c| c.is_ascii_uppercase()) {
            return Err(err("bits must be lowercase hex"));
        }
        for b in 0..8 {
            if byte >> b & 1 == 1 {
                let pos = i * 8 + b;
                if pos >= len {
                    return Err(err("padding bits beyond the declared length must be zero"));
                }
                bits.set(pos);
            }
        }
    }
    Ok(bits)
}

/// A parsed cochain document. The bits stay hex-encoded until the caller
/// knows the complex (and hence the expected length).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainDoc {
    /// Hash of the canonical bytes of the complex the cochain lives on.
    pub complex_hash: String,
    pub dim: usize,
    pub bits_hex: String,
}

/// Canonical encoding of a cochain attached to a hashed complex.
#[must_use]
pub fn cochain_to_json(complex_hash: &str, dim: usize, bits: &BitVec) -> String {
    let doc = json!({
        "complex_hash": complex_hash,
        "dim": dim,
        "bits_hex": bits_to_hex(bits),
    });
    format!("{doc}\n")
}

/// Parses a cochain document without resolving the bits.
pub fn cochain_from_json(text: &str) -> Result<CochainDoc, FormatError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| err(format!("malformed JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| err("top level must be an object"))?;
    let field = |key: &str| obj.get(key).ok_or_else(|| err(format!("missing field `{key}`")));
    let complex_hash = field("complex_hash")?
        .as_str()
        .ok_or_else(|| err("`complex_hash` must be a string"))?
        .to_string();
    if complex_hash.len() != 16 || !complex_hash.chars().all(|c| c.is_ascii_hexdigit()) {
        return Err(err("`complex_hash` must be 16 hex digits"));
    }
    let dim = field("dim")?
        .as_u64()
        .ok_or_else(|| err("`dim` must be a non-negative integer"))? as usize;
    let bits_hex = field("bits_hex")?
        .as_str()
        .ok_or_else(|| err("`bits_hex` must be a string"))?
        .to_string();
    Ok(CochainDoc { complex_hash, dim, bits_hex })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdx::complexes::{
        alexander_dual, boolean_lattice, coxeter_an, hypercube, order_complex,
        product_with_simplex, random_ynp, simplex_skeleton,
    };
    use hdx::gf2::BitVec;

    fn round_trip(x: &ComplexZ2) {
        let text = complex_to_json(x);
        let back = complex_from_json(&text).expect("canonical document decodes");
        assert_eq!(&back, x);
        assert_eq!(complex_to_json(&back), text, "re-encoding is byte-identical");
    }

    #[test]
    fn every_label_family_round_trips() {
        round_trip(&simplex_skeleton(4, 2).unwrap());
        round_trip(&hypercube(3).unwrap());
        round_trip(&coxeter_an(4).unwrap());
        round_trip(&product_with_simplex(&hypercube(1).unwrap(), 2).unwrap());
        round_trip(&order_complex(&boolean_lattice(3).unwrap().proper_part().unwrap()).unwrap());
        round_trip(&random_ynp(8, 0.5, 11).unwrap());
        round_trip(&alexander_dual(&simplex_skeleton(4, 1).unwrap(), 4).unwrap());
        round_trip(&ComplexZ2::void_complex("v"));
        round_trip(&ComplexZ2::empty_complex("e"));
    }

    #[test]
    fn documents_are_one_line_with_sorted_keys() {
        let text = complex_to_json(&hypercube(2).unwrap());
        assert!(text.ends_with('\n'));
        assert_eq!(text.matches('\n').count(), 1);
        let cells = text.find("\"cells\"").unwrap();
        let dims = text.find("\"dims\"").unwrap();
        let name = text.find("\"name\"").unwrap();
        let reduced = text.find("\"reduced\"").unwrap();
        let schema = text.find("\"schema\"").unwrap();
        let void = text.find("\"void\"").unwrap();
        assert!(cells < dims && dims < name && name < reduced && reduced < schema && schema < void);
    }

    #[test]
    fn hashes_separate_different_complexes() {
        let a = complex_hash(&hypercube(2).unwrap());
        let b = complex_hash(&hypercube(3).unwrap());
        let c = complex_hash(&hypercube(2).unwrap().renamed("other"));
        assert_ne!(a, b);
        assert_ne!(a, c, "the name participates in the hash");
        assert_eq!(a, complex_hash(&hypercube(2).unwrap()));
        assert_eq!(fnv1a64(b"hello"), 0xa430_d846_80aa_bd0b);
    }

    #[test]
    fn corrupt_documents_are_rejected() {
        let good = complex_to_json(&simplex_skeleton(3, 1).unwrap());
        assert!(complex_from_json("not json").is_err());
        assert!(complex_from_json("[1,2]").is_err());
        assert!(complex_from_json(&good.replace("hdx/1", "hdx/2")).is_err());
        assert!(complex_from_json(&good.replace("\"name\"", "\"misnamed\"")).is_err());
        // Swapping two vertex labels breaks the sortedness invariant.
        assert!(complex_from_json(&good.replace("[0,\"0\",[]],[0,\"1\",[]]", "[0,\"1\",[]],[0,\"0\",[]]")).is_err());
        // A label listed under the wrong dimension is caught before assembly.
        assert!(complex_from_json(&good.replace("[1,\"0.1\",", "[1,\"0\",")).is_err());
        // A face index out of range is caught by validation.
        assert!(complex_from_json(&good.replace("[1,\"0.1\",[0,1]]", "[1,\"0.1\",[0,9]]")).is_err());
        // A void document claiming cells is inconsistent.
        let void_doc = complex_to_json(&ComplexZ2::void_complex("v"));
        assert!(complex_from_json(&void_doc.replace("\"dims\":0", "\"dims\":1")).is_err());
    }

    #[test]
    fn bit_packing_round_trips_and_rejects_padding() {
        for len in [0usize, 1, 7, 8, 9, 63, 64, 65, 130] {
            let mut bits = BitVec::zeros(len);
            for i in (0..len).step_by(3) {
                bits.set(i);
            }
            let hex = bits_to_hex(&bits);
            assert_eq!(hex.len(), len.div_ceil(8) * 2);
            let back = bits_from_hex(len, &hex).unwrap();
            assert_eq!(back, bits);
        }
        // A set bit in the padding region of the final byte is rejected.
        assert!(bits_from_hex(9, "ff07").is_err());
        assert!(bits_from_hex(9, "ff02").is_err());
        assert!(bits_from_hex(9, "ff01").is_ok());
        // Wrong digit counts and non-hex input are rejected.
        assert!(bits_from_hex(8, "f").is_err());
        assert!(bits_from_hex(8, "fff").is_err());
        assert!(bits_from_hex(8, "zz").is_err());
        assert!(bits_from_hex(8, "FF").is_err());
    }

    #[test]
    fn cochain_documents_round_trip() {
        let x = hypercube(2).unwrap();
        let h = complex_hash(&x);
        let mut bits = BitVec::zeros(4);
        bits.set(1);
        bits.set(3);
        let text = cochain_to_json(&h, 1, &bits);
        let doc = cochain_from_json(&text).unwrap();
        assert_eq!(doc.complex_hash, h);
        assert_eq!(doc.dim, 1);
        assert_eq!(bits_from_hex(4, &doc.bits_hex).unwrap(), bits);
        assert!(cochain_from_json("{}").is_err());
        assert!(cochain_from_json(&text.replace(&h, "tooshort")).is_err());
    }
}
