#pragma once

// Shared monad constructions for the test suites.

#include "monadcert/monad.hpp"

namespace monadcert::testing {

// P^2 x P^1 monad O(-1,0) -> O^2 + O(-1,1)^2 -> O(0,1) with the explicit
// bilinear maps.
inline Monad product_monad(const SpaceDescriptor& sp = SpaceDescriptor::product(2, 1)) {
    VarContext ctx = sp.var_context();
    AdhmData d;
    d.a = 1;
    d.b = 2;
    d.c = 2;
    d.A = PolyMatrix(ctx, 2, 1);
    d.A.at(0, 0) = parse_poly("x0", ctx);
    d.A.at(1, 0) = parse_poly("x1", ctx);
    d.B = PolyMatrix(ctx, 2, 1);
    d.B.at(0, 0) = parse_poly("y0", ctx);
    d.B.at(1, 0) = parse_poly("y1", ctx);
    d.C = PolyMatrix(ctx, 1, 2);
    d.C.at(0, 0) = parse_poly("y0", ctx);
    d.C.at(0, 1) = parse_poly("y1", ctx);
    d.D = PolyMatrix(ctx, 1, 2);
    d.D.at(0, 0) = parse_poly("-x0", ctx);
    d.D.at(0, 1) = parse_poly("-x1", ctx);
    return from_adhm(sp, d);
}

// One-parameter family O(-1) -> O^4 -> O(1) on P^3 degenerating at
// lambda = 0 along {x0 = x1 = 0}.
inline Monad lambda_monad(const Rat& lam,
                          const SpaceDescriptor& sp = SpaceDescriptor::projective(3)) {
    VarContext ctx = sp.var_context();
    LineBundleSum m0(1), m1(1), m2(1);
    m0.add({-1}, 1);
    m1.add({0}, 4);
    m2.add({1}, 1);
    PolyMatrix a(ctx, 4, 1);
    a.at(0, 0) = parse_poly("x0", ctx);
    a.at(1, 0) = parse_poly("x1", ctx);
    a.at(2, 0) = parse_poly("x2", ctx).scaled(lam);
    a.at(3, 0) = parse_poly("x3", ctx).scaled(lam);
    PolyMatrix b(ctx, 1, 4);
    b.at(0, 0) = parse_poly("-x1", ctx);
    b.at(0, 1) = parse_poly("x0", ctx);
    b.at(0, 2) = parse_poly("-x3", ctx);
    b.at(0, 3) = parse_poly("x2", ctx);
    return Monad(sp, m0, m1, m2, a, b);
}

// O(-1)^c -> O^(2c+2) -> O(1)^c on P^3 with explicit maps satisfying
// beta.alpha = 0: column j of alpha is x0 e_j + x1 e_(c+j) + x2 e_(2c+1)
// + x3 e_(2c+2), row i of beta pairs them off.
inline Monad instanton_monad(int c, const SpaceDescriptor& sp = SpaceDescriptor::projective(3)) {
    VarContext ctx = sp.var_context();
    LineBundleSum m0(1), m1(1), m2(1);
    m0.add({-1}, c);
    m1.add({0}, 2 * c + 2);
    m2.add({1}, c);
    PolyMatrix a(ctx, 2 * c + 2, c);
    PolyMatrix b(ctx, c, 2 * c + 2);
    Polynomial x0 = parse_poly("x0", ctx), x1 = parse_poly("x1", ctx);
    Polynomial x2 = parse_poly("x2", ctx), x3 = parse_poly("x3", ctx);
    for (int j = 0; j < c; ++j) {
        a.at(j, j) = x0;
        a.at(c + j, j) = x1;
        a.at(2 * c, j) = x2;
        a.at(2 * c + 1, j) = x3;
    }
    for (int i = 0; i < c; ++i) {
        b.at(i, i) = x1;
        b.at(i, c + i) = -x0;
        b.at(i, 2 * c) = x3;
        b.at(i, 2 * c + 1) = -x2;
    }
    return Monad(sp, m0, m1, m2, a, b);
}

// Degenerate monad with trivial cohomology E = O + O.
inline Monad trivial_monad(const SpaceDescriptor& sp = SpaceDescriptor::projective(3)) {
    VarContext ctx = sp.var_context();
    LineBundleSum m0(sp.picard_rank()), m1(sp.picard_rank()), m2(sp.picard_rank());
    m1.add(sp.zero_degree(), 2);
    return Monad(sp, m0, m1, m2, PolyMatrix(ctx, 2, 0), PolyMatrix(ctx, 0, 2));
}

// The product monad with an extra middle O summand that no map touches;
// plants a section in the cohomology.
inline Monad planted_section_monad() {
    SpaceDescriptor sp = SpaceDescriptor::product(2, 1);
    VarContext ctx = sp.var_context();
    LineBundleSum m0(2), m1(2), m2(2);
    m0.add({-1, 0}, 1);
    m1.add({0, 0}, 3);
    m1.add({-1, 1}, 2);
    m2.add({0, 1}, 1);
    PolyMatrix a(ctx, 5, 1);
    a.at(0, 0) = parse_poly("x0", ctx);
    a.at(1, 0) = parse_poly("x1", ctx);
    a.at(3, 0) = parse_poly("y0", ctx);
    a.at(4, 0) = parse_poly("y1", ctx);
    PolyMatrix b(ctx, 1, 5);
    b.at(0, 0) = parse_poly("y0", ctx);
    b.at(0, 1) = parse_poly("y1", ctx);
    b.at(0, 3) = parse_poly("-x0", ctx);
    b.at(0, 4) = parse_poly("-x1", ctx);
    return Monad(sp, m0, m1, m2, a, b);
}

}  // namespace monadcert::testing
