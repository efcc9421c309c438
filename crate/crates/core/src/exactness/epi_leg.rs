use super::{at, require_epi, require_malcev, ExactnessError, MalcevPushoutResult};
use crate::finset::{
    compose, coproduct, kernel_pair, quotient_by_equivalence, CommutativeSquare, Cospan, SetFunction, Span,
};
use crate::relcalc::{converse, rel_compose, span_to_relation, union, Relation};

/// Pushout of a Mal'cev span whose right leg `g` is surjective.
///
/// `h` is the quotient of `A` by `1_A ∪ R°R`. Then `k` is induced on `B`
/// through the coequalizer `g` of its own kernel pair: `k(b) = h(f(c))` for
/// any `c` over `b`, and every choice of `c` is checked to agree.
pub fn pushout_epi_leg(s: &Span) -> Result<MalcevPushoutResult, ExactnessError> {
    require_malcev(s)?;
    let (f, g) = (s.left(), s.right());
    require_epi(g, "right")?;
    let (a, b) = (s.left_foot(), s.right_foot());

    let relation = span_to_relation(s);
    let ror = rel_compose(&converse(&relation), &relation).expect("R°R: A -|> A");
    let fibers = union(&Relation::identity(a), &ror).expect("same shape");
    if let Some(w) = fibers.equivalence_violation() {
        return Err(ExactnessError::internal("1_A ∪ R°R", w));
    }
    let h = quotient_by_equivalence(a, &fibers).map_err(at("quotient of A"))?;

    // h coequalizes f∘c0 and f∘c1
    let kp = kernel_pair(g);
    let hf = compose(&h, f).map_err(at("h∘f"))?;
    let (via0, via1) = (
        compose(&hf, kp.left()).map_err(at("h∘f∘c0"))?,
        compose(&hf, kp.right()).map_err(at("h∘f∘c1"))?,
    );
    if let Some(p) = via0.table().iter().zip(via1.table()).position(|(x, y)| x != y) {
        return Err(ExactnessError::internal(
            "coequalizer",
            format!(
                "h∘f does not coequalize the kernel pair of g at {}",
                kp.apex().element(p)
            ),
        ));
    }

    let mut table: Vec<Option<usize>> = vec![None; b.len()];
    for c in 0..s.apex().len() {
        let value = hf.apply_index(c);
        let slot = &mut table[g.apply_index(c)];
        match *slot {
            None => *slot = Some(value),
            Some(prev) if prev != value => {
                return Err(ExactnessError::internal(
                    "induced k",
                    format!(
                        "k({}) is both {} and {}",
                        b.element(g.apply_index(c)),
                        h.codomain().element(prev),
                        h.codomain().element(value)
                    ),
                ))
            }
            Some(_) => {}
        }
    }
    let table = table.into_iter().map(|v| v.expect("g is surjective")).collect();
    let k = SetFunction::from_table(b.clone(), h.codomain().clone(), table).map_err(at("induced k"))?;

    let sum = coproduct(a, b);
    let quotient = sum.copair(&h, &k).map_err(at("[h,k]"))?;
    let kp_sum = kernel_pair(&quotient);
    let equivalence = span_to_relation(&kp_sum);
    let cospan = Cospan::new(h.clone(), k.clone()).map_err(at("cospan"))?;
    let square = CommutativeSquare::new(s.clone(), cospan).map_err(at("pushout square"))?;
    Ok(MalcevPushoutResult {
        input: s.clone(),
        relation,
        equivalence,
        quotient,
        h,
        k,
        square,
    })
}
