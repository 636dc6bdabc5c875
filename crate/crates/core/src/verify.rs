//! Independent re-verification of witnesses.
//!
//! These checkers share no code with the searches that produced the
//! certificates: they rebuild the embedding from `(v, u)`, recompute
//! the cokernel (or cone homology) with the deterministic constructions
//! of [`rep`] and [`derived`], and check the stored isomorphism against
//! the named target. They are what `verify-witness` runs on files.
//!
//! [`rep`]: crate::rep
//! [`derived`]: crate::derived

use crate::degeneration::RzWitness;
use crate::derived::{mapping_cone, Complex, TriangleWitness};
use crate::error::Error;
use crate::rep::{direct_sum, kernel_cokernel, Representation};
use crate::Result;

fn fail(why: impl Into<String>) -> Error {
    Error::InvalidWitness(why.into())
}

/// Re-checks every invariant of an exact-sequence witness for `m <= n`
/// from scratch.
pub fn verify_rz_witness(m: &Representation, n: &Representation, w: &RzWitness) -> Result<()> {
    if w.u.target() != m {
        return Err(fail("witness maps into a different m"));
    }
    if w.cokernel_iso.target() != n {
        return Err(fail("witness cokernel maps onto a different n"));
    }
    if w.v.source() != &w.z || w.v.target() != &w.z {
        return Err(fail("v is not an endomorphism of z"));
    }
    if w.u.source() != &w.z {
        return Err(fail("u does not start at z"));
    }
    // strict nilpotence by exact matrix power
    if !w.v.is_nilpotent()? {
        return Err(fail("v is not nilpotent"));
    }
    // rebuild the embedding z -> z ⊕ m from (v, u)
    let sum = direct_sum(m.quiver(), m.field(), &[w.z.clone(), m.clone()])?;
    let embedding = w
        .v
        .then(&sum.inclusions[0])?
        .add(&w.u.then(&sum.inclusions[1])?)?;
    if embedding != w.embedding {
        return Err(fail("stored embedding does not match (v, u)"));
    }
    if !embedding.is_injective()? {
        return Err(fail("embedding is not injective"));
    }
    // recompute the cokernel with the canonical construction
    let kc = kernel_cokernel(&embedding)?;
    if &kc.cokernel != w.cokernel_iso.source() {
        return Err(fail("stored cokernel differs from the recomputed one"));
    }
    if !w.cokernel_iso.is_invertible()? {
        return Err(fail("cokernel comparison map is not invertible"));
    }
    // RepMorphism validity (intertwining) was re-checked on construction;
    // for deserialized witnesses the loader goes through the same
    // constructor, so reaching this point means every component holds.
    Ok(())
}

/// Re-checks a triangle witness for `m <= n` in the derived category.
pub fn verify_triangle_witness(m: &Complex, n: &Complex, w: &TriangleWitness) -> Result<()> {
    if w.u.target() != m {
        return Err(fail("witness maps into a different m"));
    }
    if &w.n != n {
        return Err(fail("witness targets a different n"));
    }
    if w.v.source() != &w.z || w.v.target() != &w.z {
        return Err(fail("v is not a chain endomorphism of z"));
    }
    if w.u.source() != &w.z {
        return Err(fail("u does not start at z"));
    }
    if !w.v.is_nilpotent()? {
        return Err(fail("v is not nilpotent as a chain map"));
    }
    let cone = mapping_cone(&w.embedding()?)?;
    let lo = cone.lo().min(n.lo());
    let hi = cone.hi().max(n.hi());
    for i in lo..=hi {
        let hc = cone.homology(i)?;
        let hn = n.homology(i)?;
        let stored = w.cone_iso.iter().find(|(d, _)| *d == i).map(|(_, f)| f);
        match stored {
            None => {
                if !hc.is_zero() || !hn.is_zero() {
                    return Err(fail(format!(
                        "missing cone isomorphism at degree {} with nonzero homology",
                        i
                    )));
                }
            }
            Some(f) => {
                if f.source() != &hc {
                    return Err(fail(format!(
                        "cone isomorphism at degree {} starts at the wrong homology",
                        i
                    )));
                }
                if f.target() != &hn {
                    return Err(fail(format!(
                        "cone isomorphism at degree {} ends at the wrong homology",
                        i
                    )));
                }
                if !f.is_invertible()? {
                    return Err(fail(format!("cone map at degree {} is not invertible", i)));
                }
            }
        }
    }
    Ok(())
}
