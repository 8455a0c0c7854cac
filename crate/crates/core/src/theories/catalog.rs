use std::sync::OnceLock;

use crate::syntax::{parse_arrow_term, ArrowTerm, Formula};

use super::{AxiomSchema, Theory};

/// `c^m_{A,B,C,D} : (A ∧ B) ∧ (C ∧ D) ⊢ (A ∧ C) ∧ (B ∧ D)`, the middle interchange.
pub fn mid_interchange(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> ArrowTerm {
    use ArrowTerm::*;
    let bd = Formula::conj(b.clone(), d.clone());
    let cd = Formula::conj(c.clone(), d.clone());
    // b←_{C,B,D} ∘ (c_{B,C} ∧ 1_D) ∘ b→_{B,C,D}
    let inner = ArrowTerm::compose_all(vec![
        BAssocL(c.clone(), b.clone(), d.clone()),
        ArrowTerm::tens(CSym(b.clone(), c.clone()), Id(d.clone())),
        BAssocR(b.clone(), c.clone(), d.clone()),
    ]);
    ArrowTerm::compose_all(vec![
        BAssocR(a.clone(), c.clone(), bd),
        ArrowTerm::tens(Id(a.clone()), inner),
        BAssocL(a.clone(), b.clone(), cd),
    ])
}

fn parsed(text: &str) -> ArrowTerm {
    parse_arrow_term(text).unwrap_or_else(|e| panic!("catalog entry {text:?} does not parse: {e}"))
}

fn schema(name: &'static str, theory: Theory, lhs: &str, rhs: &str) -> AxiomSchema {
    AxiomSchema::new(name, theory, parsed(lhs), parsed(rhs))
}

fn symon() -> Vec<AxiomSchema> {
    use Theory::SyMon as S;
    vec![
        schema("(cat 1) right unit", S, "?f[A, B] . id[A]", "?f[A, B]"),
        schema("(cat 1) left unit", S, "id[B] . ?f[A, B]", "?f[A, B]"),
        schema(
            "(cat 2)",
            S,
            "?h[C, D] . (?g[B, C] . ?f[A, B])",
            "(?h[C, D] . ?g[B, C]) . ?f[A, B]",
        ),
        schema("(∧1)", S, "id[A] * id[B]", "id[A /\\ B]"),
        schema(
            "(∧2)",
            S,
            "(?g1[B, C] . ?f1[A, B]) * (?g2[E, F] . ?f2[D, E])",
            "(?g1[B, C] * ?g2[E, F]) . (?f1[A, B] * ?f2[D, E])",
        ),
        schema(
            "(b→ nat)",
            S,
            "((?f[A, D] * ?g[B, E]) * ?h[C, F]) . bR[A, B, C]",
            "bR[D, E, F] . (?f[A, D] * (?g[B, E] * ?h[C, F]))",
        ),
        schema(
            "(c nat)",
            S,
            "(?g[B, E] * ?f[A, D]) . c[A, B]",
            "c[D, E] . (?f[A, D] * ?g[B, E])",
        ),
        schema(
            "(d→ nat)",
            S,
            "?f[A, B] . dR[A]",
            "dR[B] . (?f[A, B] * id[T])",
        ),
        schema(
            "(bb) b→∘b←",
            S,
            "bR[A, B, C] . bL[A, B, C]",
            "id[(A /\\ B) /\\ C]",
        ),
        schema(
            "(bb) b←∘b→",
            S,
            "bL[A, B, C] . bR[A, B, C]",
            "id[A /\\ (B /\\ C)]",
        ),
        schema(
            "(b5)",
            S,
            "bR[A /\\ B, C, D] . bR[A, B, C /\\ D]",
            "(bR[A, B, C] * id[D]) . (bR[A, B /\\ C, D] . (id[A] * bR[B, C, D]))",
        ),
        schema("(cc)", S, "c[B, A] . c[A, B]", "id[A /\\ B]"),
        schema(
            "(bc)",
            S,
            "c[A, B /\\ C]",
            "bR[B, C, A] . ((id[B] * c[A, C]) . (bL[B, A, C] . ((c[A, B] * id[C]) . bR[A, B, C])))",
        ),
        schema("(dd) d→∘d←", S, "dR[A] . dL[A]", "id[A]"),
        schema("(dd) d←∘d→", S, "dL[A] . dR[A]", "id[A /\\ T]"),
        schema("(bd)", S, "bR[A, B, T]", "dL[A /\\ B] . (id[A] * dR[B])"),
    ]
}

fn remon() -> Vec<AxiomSchema> {
    use Theory::ReMon as R;
    let a = Formula::letter("A");
    let b = Formula::letter("B");
    let bcw_rhs = ArrowTerm::comp(
        mid_interchange(&a, &a, &b, &b),
        ArrowTerm::tens(ArrowTerm::WDiag(a.clone()), ArrowTerm::WDiag(b.clone())),
    );
    vec![
        schema(
            "(w nat)",
            R,
            "(?f[A, D] * ?f[A, D]) . w[A]",
            "w[D] . ?f[A, D]",
        ),
        schema(
            "(bw)",
            R,
            "bR[A, A, A] . ((id[A] * w[A]) . w[A])",
            "(w[A] * id[A]) . w[A]",
        ),
        schema("(cw)", R, "c[A, A] . w[A]", "w[A]"),
        AxiomSchema::new("(bcw)", R, parsed("w[A /\\ B]"), bcw_rhs),
        schema("(wd)", R, "w[T]", "dL[T]"),
    ]
}

fn smc() -> Vec<AxiomSchema> {
    use Theory::Smc as M;
    vec![
        schema("(A→ 1)", M, "(A -> id[B])", "id[A -> B]"),
        schema(
            "(A→ 2)",
            M,
            "(A -> (?f[C, D] . ?g[B, C]))",
            "(A -> ?f[C, D]) . (A -> ?g[B, C])",
        ),
        schema(
            "(ε nat)",
            M,
            "?f[B, C] . eps[A, B]",
            "eps[A, C] . (id[A] * (A -> ?f[B, C]))",
        ),
        schema(
            "(η nat)",
            M,
            "(A -> (id[A] * ?f[B, C])) . eta[A, B]",
            "eta[A, C] . ?f[B, C]",
        ),
        schema(
            "(εη ∧)",
            M,
            "eps[A, A /\\ B] . (id[A] * eta[A, B])",
            "id[A /\\ B]",
        ),
        schema(
            "(εη →)",
            M,
            "(A -> eps[A, B]) . eta[A, A -> B]",
            "id[A -> B]",
        ),
    ]
}

fn additive() -> Vec<AxiomSchema> {
    use Theory::Additive as D;
    vec![
        schema(
            "(⊓ β1)",
            D,
            "p1[A, B] . pair(?f[C, A], ?g[C, B])",
            "?f[C, A]",
        ),
        schema(
            "(⊓ β2)",
            D,
            "p2[A, B] . pair(?f[C, A], ?g[C, B])",
            "?g[C, B]",
        ),
        schema(
            "(⊓ η)",
            D,
            "pair(p1[A, B] . ?h[C, A x B], p2[A, B] . ?h[C, A x B])",
            "?h[C, A x B]",
        ),
        schema(
            "(⊔ β1)",
            D,
            "copair(?f[A, C], ?g[B, C]) . i1[A, B]",
            "?f[A, C]",
        ),
        schema(
            "(⊔ β2)",
            D,
            "copair(?f[A, C], ?g[B, C]) . i2[A, B]",
            "?g[B, C]",
        ),
        schema(
            "(⊔ η)",
            D,
            "copair(?h[A + B, C] . i1[A, B], ?h[A + B, C] . i2[A, B])",
            "?h[A + B, C]",
        ),
        schema("(⊤ₐ terminal)", D, "?f[A, Ta]", "term[A]"),
        schema("(⊤ₐ initial)", D, "?f[Ta, A]", "init[A]"),
    ]
}

struct Catalog {
    symon: Vec<AxiomSchema>,
    remon: Vec<AxiomSchema>,
    smc: Vec<AxiomSchema>,
    additive: Vec<AxiomSchema>,
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog {
        symon: symon(),
        remon: remon(),
        smc: smc(),
        additive: additive(),
    })
}

/// Every schema of `theory`, including those inherited from smaller theories.
///
/// ReMon and SMC both extend SyMon; RMC is their union. `Additive` is RMC
/// together with the product and coproduct laws.
pub fn axioms(theory: Theory) -> Vec<AxiomSchema> {
    let c = catalog();
    let mut out = c.symon.clone();
    if theory.is_relevant() {
        out.extend(c.remon.iter().cloned());
    }
    if theory.is_closed() {
        out.extend(c.smc.iter().cloned());
    }
    if theory == Theory::Additive {
        out.extend(c.additive.iter().cloned());
    }
    out
}
