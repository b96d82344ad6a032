use std::fmt::Debug;

use crate::error::Result;

/// The structure the Chu construction needs from its base: a symmetric
/// closed monoidal category with finite limits and colimits, a second
/// (sequencing) tensor with the duoidal interchange, and a dualising
/// object `⊥` that is a monoid for the sequencing tensor.
///
/// Hom-sets must be finite and enumerable. Enumerations honour
/// [`MonoidalEngine::budget`].
pub trait MonoidalEngine: Send + Sync {
    type Obj: Clone + PartialEq + Debug + Send + Sync;
    type Mor: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn budget(&self) -> u64;
    /// Carrier sizes, for reports and cheap iso pre-checks.
    fn sizes(&self, a: &Self::Obj) -> Vec<usize>;
    fn describe(&self, a: &Self::Obj) -> String;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn id(&self, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>;
    /// Where two parallel maps first differ, if they do.
    fn first_difference(&self, f: &Self::Mor, g: &Self::Mor) -> Option<String>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    /// All `h` with `q∘h = g`; only monic ones if `injective`.
    fn lifts(&self, q: &Self::Mor, g: &Self::Mor, injective: bool) -> Result<Vec<Self::Mor>>;
    /// A rough log-size of `hom(a, b)`, used to pick which side of a Chu
    /// square to enumerate.
    fn hom_cost(&self, a: &Self::Obj, b: &Self::Obj) -> f64 {
        let (sa, sb) = (self.sizes(a), self.sizes(b));
        sa.iter().zip(&sb).map(|(&x, &y)| x as f64 * (y as f64 + 1.0).ln()).sum()
    }
    /// All isomorphisms `a → b`.
    fn isos(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;

    fn unit(&self) -> Self::Obj;
    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// `(a⊗b)⊗c → a⊗(b⊗c)`.
    fn assoc(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Result<Self::Mor>;
    fn assoc_inv(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Result<Self::Mor>;
    /// `i⊗a → a`.
    fn lunit(&self, a: &Self::Obj) -> Result<Self::Mor>;
    fn lunit_inv(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// `a⊗i → a`.
    fn runit(&self, a: &Self::Obj) -> Result<Self::Mor>;
    fn runit_inv(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// `a⊗b → b⊗a`.
    fn sym(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Mor>;

    fn ihom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    /// `[a,b]⊗a → b`.
    fn eval(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Mor>;
    /// The transpose `x → [a,b]` of `f: x⊗a → b`.
    fn curry(&self, f: &Self::Mor, x: &Self::Obj, a: &Self::Obj) -> Result<Self::Mor>;
    /// The transpose `x⊗a → b` of `k: x → [a,b]`.
    fn uncurry(&self, k: &Self::Mor, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Mor> {
        self.compose(&self.eval(a, b)?, &self.tensor_mor(k, &self.id(a))?)
    }

    /// Pullback of the cospan `f, g` with its projections.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Obj, Self::Mor, Self::Mor)>;
    /// The unique map into the pullback of `f, g` with legs `p, q`.
    fn pullback_mediator(
        &self,
        f: &Self::Mor,
        g: &Self::Mor,
        apex: &Self::Obj,
        p: &Self::Mor,
        q: &Self::Mor,
    ) -> Result<Self::Mor>;
    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Obj, Self::Mor, Self::Mor)>;
    fn pushout_mediator(
        &self,
        f: &Self::Mor,
        g: &Self::Mor,
        apex: &Self::Obj,
        a: &Self::Mor,
        b: &Self::Mor,
    ) -> Result<Self::Mor>;
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<(Self::Obj, Self::Mor, Self::Mor)>;
    fn pairing(&self, apex: &Self::Obj, p: &Self::Mor, q: &Self::Mor) -> Result<Self::Mor>;
    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj) -> Result<(Self::Obj, Self::Mor, Self::Mor)>;
    fn copairing(&self, apex: &Self::Obj, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn terminal(&self) -> Self::Obj;
    fn initial(&self) -> Self::Obj;

    fn seq_unit(&self) -> Self::Obj;
    fn seq(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    fn seq_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// `(a⊲b)⊗(c⊲d) → (a⊗c)⊲(b⊗d)`.
    fn delta(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj, d: &Self::Obj) -> Result<Self::Mor>;
    /// `i → i⊲i`.
    fn gamma(&self) -> Result<Self::Mor>;
    /// `j⊗j → j` for the sequencing unit `j`.
    fn mu(&self) -> Result<Self::Mor>;
    /// `i → j`.
    fn nu(&self) -> Result<Self::Mor>;
    /// `j⊲a → a`.
    fn seq_lunit(&self, a: &Self::Obj) -> Result<Self::Mor>;
    fn seq_lunit_inv(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// `a⊲j → a`.
    fn seq_runit(&self, a: &Self::Obj) -> Result<Self::Mor>;
    fn seq_runit_inv(&self, a: &Self::Obj) -> Result<Self::Mor>;

    fn bottom(&self) -> Self::Obj;
    /// `m: ⊥⊲⊥ → ⊥`.
    fn bottom_mult(&self) -> Result<Self::Mor>;
    /// `u: j → ⊥`.
    fn bottom_unit(&self) -> Result<Self::Mor>;
}
