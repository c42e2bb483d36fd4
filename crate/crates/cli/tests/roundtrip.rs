use hplane_cli::{parse_expr, Context, Expr, Op};
use proptest::prelude::*;

fn leaf(symbols: Vec<&'static str>) -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..20).prop_map(Expr::Int),
        proptest::sample::select(symbols).prop_map(|s| Expr::Sym(s.to_string())),
    ]
}

fn op() -> impl Strategy<Value = Op> {
    proptest::sample::select(vec![Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Wedge, Op::Tensor])
}

fn tree(symbols: Vec<&'static str>) -> impl Strategy<Value = Expr> {
    leaf(symbols).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op(), inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
            (inner.clone(), 0i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Comm(Box::new(a), Box::new(b))),
        ]
    })
}

/// Well-typed algebra elements of the extended plane.
fn element() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (1u64..5).prop_map(Expr::Int),
        proptest::sample::select(vec!["x", "y", "u", "v", "h", "i"]).prop_map(|s| Expr::Sym(s.to_string())),
        Just(Expr::Pow(Box::new(Expr::Sym("y".into())), -1)),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (proptest::sample::select(vec![Op::Add, Op::Sub, Op::Mul]), inner.clone(), inner.clone())
                .prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
            (inner.clone(), 0i64..3).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Comm(Box::new(a), Box::new(b))),
        ]
    })
}

fn symbols(ctx: &Context) -> Vec<&'static str> {
    ctx.symbols().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(e in tree(symbols(&Context::named("ext3").unwrap()))) {
        let ctx = Context::named("ext3").unwrap();
        let printed = e.to_string();
        let back = parse_expr(&printed, &ctx).map_err(|err| TestCaseError::fail(err.annotate(&printed)))?;
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn normal_forms_reparse(e in element()) {
        let ctx = Context::named("ext").unwrap();
        let value = ctx.eval(&e).unwrap();
        let text = value.to_string();
        let again = ctx.eval(&parse_expr(&text, &ctx).map_err(|err| TestCaseError::fail(err.annotate(&text)))?).unwrap();
        prop_assert_eq!(again.to_string(), text);
    }

    #[test]
    fn form_normal_forms_reparse(a in element(), b in element()) {
        let ctx = Context::named("ext").unwrap();
        let e = Expr::Bin(
            Op::Add,
            Box::new(Expr::Bin(Op::Mul, Box::new(a), Box::new(Expr::Sym("xi".into())))),
            Box::new(Expr::Bin(Op::Mul, Box::new(Expr::Sym("eta".into())), Box::new(b))),
        );
        let value = ctx.eval(&e).unwrap();
        let text = value.to_string();
        let again = ctx.eval(&parse_expr(&text, &ctx).map_err(|err| TestCaseError::fail(err.annotate(&text)))?).unwrap();
        prop_assert_eq!(again.to_string(), text);
    }
}
