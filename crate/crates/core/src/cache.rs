//! On-disk cache of enumerated group tables.
//!
//! Layout (all integers little-endian):
//!
//! | field    | size                     |
//! |----------|--------------------------|
//! | magic    | 4 bytes, `GRRT`          |
//! | version  | u32                      |
//! | p        | u32                      |
//! | f        | u32                      |
//! | modulus  | f x u32 (`c_0..c_{f-1}`) |
//! | kind     | u8 (0 = PSL, 1 = PGL)    |
//! | count    | u64                      |
//! | elements | count x 4 x f x u16      |
//!
//! Each element is its four canonical entries in row-major order, each entry
//! written as its `f` coefficients, low degree first.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gfq::FieldCtx;
use crate::pgl2::{GroupKind, GroupTable, ProjMat};

const MAGIC: &[u8; 4] = b"GRRT";
const VERSION: u32 = 1;

pub fn cache_path(dir: &Path, ctx: &FieldCtx, kind: GroupKind) -> PathBuf {
    let modulus: Vec<String> = ctx.modulus().iter().map(u32::to_string).collect();
    let kind = match kind {
        GroupKind::Psl => "psl",
        GroupKind::Pgl => "pgl",
    };
    dir.join(format!("{kind}2_p{}_f{}_m{}.bin", ctx.p(), ctx.f(), modulus.join("-")))
}

pub fn write_table(w: &mut impl Write, table: &GroupTable) -> Result<()> {
    let ctx = table.ctx();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&ctx.p().to_le_bytes())?;
    w.write_all(&ctx.f().to_le_bytes())?;
    for c in ctx.modulus() {
        w.write_all(&c.to_le_bytes())?;
    }
    w.write_all(&[kind_byte(table.kind())])?;
    w.write_all(&(table.len() as u64).to_le_bytes())?;
    let mut buf = Vec::with_capacity(table.len() * 8 * ctx.f() as usize);
    for m in table.elems() {
        for x in m.entries() {
            for c in ctx.coeffs(x) {
                buf.extend_from_slice(&(c as u16).to_le_bytes());
            }
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Reads a table written by [`write_table`], checking the header against the
/// expected field and kind.
pub fn read_table(r: &mut impl Read, ctx: &FieldCtx, kind: GroupKind) -> Result<GroupTable> {
    let mismatch = |what: &str| Error::Cache(format!("header mismatch: {what}"));
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(mismatch("magic"));
    }
    if read_u32(r)? != VERSION {
        return Err(mismatch("version"));
    }
    if read_u32(r)? != ctx.p() || read_u32(r)? != ctx.f() {
        return Err(mismatch("field"));
    }
    for &c in ctx.modulus() {
        if read_u32(r)? != c {
            return Err(mismatch("modulus"));
        }
    }
    let mut k = [0u8; 1];
    r.read_exact(&mut k)?;
    if k[0] != kind_byte(kind) {
        return Err(mismatch("kind"));
    }
    let mut count = [0u8; 8];
    r.read_exact(&mut count)?;
    let count = u64::from_le_bytes(count) as usize;
    let f = ctx.f() as usize;
    let mut buf = vec![0u8; count * 4 * f * 2];
    r.read_exact(&mut buf)?;
    let mut coeffs = buf.chunks_exact(2).map(|b| u16::from_le_bytes([b[0], b[1]]) as u32);
    let mut elems = Vec::with_capacity(count);
    let mut entry = vec![0u32; f];
    for _ in 0..count {
        let mut raw = [crate::gfq::FieldElem::ZERO; 4];
        for slot in raw.iter_mut() {
            for c in entry.iter_mut() {
                *c = coeffs.next().expect("buffer sized to count");
            }
            *slot = ctx.from_coeffs(&entry).map_err(|_| Error::Cache("bad coefficient".into()))?;
        }
        elems.push(ProjMat::canon(ctx, raw).map_err(|e| Error::Cache(e.to_string()))?);
    }
    GroupTable::from_elements(ctx.clone(), kind, elems).map_err(|e| Error::Cache(e.to_string()))
}

/// Loads the table from `dir` when a valid cache file exists, otherwise
/// enumerates it and writes the cache. Unreadable cache files are rebuilt.
pub fn load_or_build(dir: Option<&Path>, ctx: FieldCtx, kind: GroupKind) -> Result<GroupTable> {
    let Some(dir) = dir else {
        return GroupTable::enumerate(ctx, kind);
    };
    let path = cache_path(dir, &ctx, kind);
    if let Ok(file) = fs::File::open(&path) {
        match read_table(&mut io::BufReader::new(file), &ctx, kind) {
            Ok(table) => return Ok(table),
            Err(e) => log::warn!("ignoring cache {}: {e}", path.display()),
        }
    }
    let table = GroupTable::enumerate(ctx, kind)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    {
        let mut w = io::BufWriter::new(fs::File::create(&tmp)?);
        write_table(&mut w, &table)?;
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(table)
}

fn kind_byte(kind: GroupKind) -> u8 {
    match kind {
        GroupKind::Psl => 0,
        GroupKind::Pgl => 1,
    }
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}
