use super::expr::{Node, RadicalExpr};

/// Rebuilds `e` bottom-up through the canonicalising constructors:
/// flattening, rational folding, like-term and like-base collection,
/// perfect-power extraction from radicands and sign normalisation.
pub fn simplify_radical(e: &RadicalExpr) -> RadicalExpr {
    let s = simplify_radical;
    match e.node() {
        Node::Rational(_) | Node::Param(_) => e.clone(),
        Node::Add(ts) => RadicalExpr::add(ts.iter().map(s).collect()),
        Node::Mul(fs) => RadicalExpr::mul(fs.iter().map(s).collect()),
        Node::Neg(a) => RadicalExpr::neg(&s(a)),
        Node::Div(a, b) => RadicalExpr::div(&s(a), &s(b)),
        Node::IntPow(b, k) => RadicalExpr::pow(&s(b), *k),
        Node::Root(b, n) => RadicalExpr::root(&s(b), *n),
        Node::UnityRoot(n, j) => RadicalExpr::unity(*n, *j),
        Node::Select {
            guard,
            primary,
            fallback,
        } => RadicalExpr::select(&s(guard), &s(primary), &s(fallback)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn raw(n: Node) -> RadicalExpr {
        RadicalExpr::raw(n)
    }

    #[test]
    fn perfect_square_root() {
        let e = raw(Node::Root(RadicalExpr::int(4), 2));
        assert_eq!(simplify_radical(&e), RadicalExpr::int(2));
        let e = raw(Node::Root(RadicalExpr::rational(rational(9, 4)), 2));
        assert_eq!(simplify_radical(&e), RadicalExpr::rational(rational(3, 2)));
    }

    #[test]
    fn cancellation() {
        let a = RadicalExpr::param("a");
        let e = raw(Node::Add(vec![a.clone(), raw(Node::Neg(a))]));
        assert_eq!(simplify_radical(&e), RadicalExpr::zero());
    }

    #[test]
    fn zero_radicand() {
        let e = raw(Node::Root(RadicalExpr::zero(), 3));
        assert_eq!(simplify_radical(&e), RadicalExpr::zero());
    }

    #[test]
    fn partial_extraction() {
        let e = raw(Node::Root(RadicalExpr::int(12), 2));
        assert_eq!(simplify_radical(&e).to_string(), "2*sqrt(3)");
        let e = raw(Node::Root(RadicalExpr::rational(rational(1, 2)), 2));
        assert_eq!(simplify_radical(&e).to_string(), "(1/2)*sqrt(2)");
        let e = raw(Node::Root(RadicalExpr::int(-54), 3));
        assert_eq!(simplify_radical(&e).to_string(), "3*cbrt(-2)");
    }

    #[test]
    fn power_collapse() {
        let r3 = RadicalExpr::sqrt(&RadicalExpr::int(3));
        let e = raw(Node::Mul(vec![r3.clone(), r3.clone()]));
        assert_eq!(simplify_radical(&e), RadicalExpr::int(3));
        let e = raw(Node::IntPow(r3.clone(), 3));
        assert_eq!(simplify_radical(&e).to_string(), "3*sqrt(3)");
        let a = RadicalExpr::param("a");
        let e = raw(Node::IntPow(raw(Node::IntPow(a.clone(), 2)), 3));
        assert_eq!(simplify_radical(&e), RadicalExpr::pow(&a, 6));
    }

    #[test]
    fn negation_normal_form() {
        let a = RadicalExpr::param("a");
        let e = raw(Node::Neg(raw(Node::Neg(a.clone()))));
        assert_eq!(simplify_radical(&e), a);
        let e = raw(Node::Neg(RadicalExpr::int(3)));
        assert_eq!(simplify_radical(&e), RadicalExpr::int(-3));
    }

    #[test]
    fn unity_roots() {
        assert_eq!(simplify_radical(&raw(Node::UnityRoot(4, 2))), RadicalExpr::int(-1));
        assert_eq!(simplify_radical(&raw(Node::UnityRoot(6, 2))), RadicalExpr::unity(3, 1));
        let w = RadicalExpr::unity(3, 1);
        assert_eq!(RadicalExpr::pow(&w, 3), RadicalExpr::one());
        assert_eq!(&w * &w, RadicalExpr::unity(3, 2));
    }

    #[test]
    fn display_forms() {
        let s3 = RadicalExpr::sqrt(&RadicalExpr::int(3));
        let inner = &RadicalExpr::int(3) + &RadicalExpr::scale(&s3, &rational(4, 1));
        let e = RadicalExpr::add(vec![
            RadicalExpr::one(),
            RadicalExpr::scale(&s3, &rational(-1, 2)),
            RadicalExpr::scale(&RadicalExpr::sqrt(&inner), &rational(1, 2)),
        ]);
        assert_eq!(e.to_string(), "1-(1/2)*sqrt(3)+(1/2)*sqrt(3+4*sqrt(3))");
        let a = RadicalExpr::param("a");
        assert_eq!(RadicalExpr::root(&a, 5).to_string(), "root(a, 5)");
        assert_eq!(RadicalExpr::unity(3, 2).to_string(), "omega(3, 2)");
        let q = RadicalExpr::div(&RadicalExpr::int(1), &(&a + &RadicalExpr::one()));
        assert_eq!(q.to_string(), "1/(1+a)");
    }
}
