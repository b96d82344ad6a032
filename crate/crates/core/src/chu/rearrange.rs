//! Structural isomorphisms between bracketings of a tensor word, built
//! from associators and symmetries only.

use super::MonoidalEngine;
use crate::error::{Error, Result};

/// A bracketing of a tensor word; leaves index into an object list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Leaf(usize),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn node(a: Bracket, b: Bracket) -> Bracket {
        Bracket::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            Bracket::Leaf(i) => vec![*i],
            Bracket::Node(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }
}

fn object<E: MonoidalEngine>(e: &E, t: &Bracket, objs: &[E::Obj]) -> Result<E::Obj> {
    match t {
        Bracket::Leaf(i) => objs.get(*i).cloned().ok_or_else(|| Error::TypeMismatch(format!("no object {i}"))),
        Bracket::Node(a, b) => e.tensor(&object(e, a, objs)?, &object(e, b, objs)?),
    }
}

/// `x0⊗(x1⊗(…⊗xn))`.
fn right_nested<E: MonoidalEngine>(e: &E, list: &[usize], objs: &[E::Obj]) -> Result<E::Obj> {
    match list {
        [x] => Ok(objs[*x].clone()),
        [x, rest @ ..] => e.tensor(&objs[*x], &right_nested(e, rest, objs)?),
        [] => Err(Error::TypeMismatch("empty tensor word".into())),
    }
}

/// `rn(l)⊗rn(r) → rn(l ++ r)`.
fn append<E: MonoidalEngine>(e: &E, l: &[usize], r: &[usize], objs: &[E::Obj]) -> Result<E::Mor> {
    let rr = right_nested(e, r, objs)?;
    match l {
        [x] => Ok(e.id(&e.tensor(&objs[*x], &rr)?)),
        [x, rest @ ..] => {
            let a = e.assoc(&objs[*x], &right_nested(e, rest, objs)?, &rr)?;
            let tail = e.tensor_mor(&e.id(&objs[*x]), &append(e, rest, r, objs)?)?;
            e.compose(&tail, &a)
        }
        [] => Err(Error::TypeMismatch("empty tensor word".into())),
    }
}

/// The map from `t` to the right-nested form of its leaves.
fn normalize<E: MonoidalEngine>(e: &E, t: &Bracket, objs: &[E::Obj]) -> Result<E::Mor> {
    match t {
        Bracket::Leaf(_) => Ok(e.id(&object(e, t, objs)?)),
        Bracket::Node(a, b) => {
            let m = e.tensor_mor(&normalize(e, a, objs)?, &normalize(e, b, objs)?)?;
            e.compose(&append(e, &a.leaves(), &b.leaves(), objs)?, &m)
        }
    }
}

/// Swaps positions `k` and `k+1` of a right-nested word.
fn swap_at<E: MonoidalEngine>(e: &E, list: &[usize], k: usize, objs: &[E::Obj]) -> Result<E::Mor> {
    let x0 = &objs[list[0]];
    if k > 0 {
        return e.tensor_mor(&e.id(x0), &swap_at(e, &list[1..], k - 1, objs)?);
    }
    let x1 = &objs[list[1]];
    if list.len() == 2 {
        return e.sym(x0, x1);
    }
    let rest = right_nested(e, &list[2..], objs)?;
    let s = e.tensor_mor(&e.sym(x0, x1)?, &e.id(&rest))?;
    e.compose(&e.assoc(x1, x0, &rest)?, &e.compose(&s, &e.assoc_inv(x0, x1, &rest)?)?)
}

pub(crate) fn rearrange<E: MonoidalEngine>(e: &E, src: &Bracket, dst: &Bracket, objs: &[E::Obj]) -> Result<E::Mor> {
    let mut cur = src.leaves();
    let target = dst.leaves();
    let mut sorted_cur = cur.clone();
    let mut sorted_target = target.clone();
    sorted_cur.sort_unstable();
    sorted_target.sort_unstable();
    if sorted_cur != sorted_target {
        return Err(Error::TypeMismatch("bracketings have different leaves".into()));
    }
    let mut acc = normalize(e, src, objs)?;
    let rank = |x: usize| target.iter().position(|&y| y == x).expect("same leaves");
    for pass in 0..cur.len() {
        for k in 0..cur.len().saturating_sub(pass + 1) {
            if rank(cur[k]) > rank(cur[k + 1]) {
                acc = e.compose(&swap_at(e, &cur, k, objs)?, &acc)?;
                cur.swap(k, k + 1);
            }
        }
    }
    let back = e
        .inverse(&normalize(e, dst, objs)?)
        .ok_or_else(|| Error::IsoNotFound("normalisation is not invertible".into()))?;
    e.compose(&back, &acc)
}
