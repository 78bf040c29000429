#include "fewnomial/gale.hpp"

#include <cmath>

namespace fewnomial {

namespace {

int flat_index(const std::vector<int>& block_sizes, int i, int j) {
    int idx = 0;
    for (int t = 0; t < i; ++t)
        idx += block_sizes[t];
    return idx + (j - 1);
}

int column_of(const std::vector<std::pair<int, int>>& labels, int i, int j) {
    for (std::size_t c = 0; c < labels.size(); ++c)
        if (labels[c].first == i && labels[c].second == j)
            return static_cast<int>(c);
    throw Error("no alpha column for the requested (i, j)");
}

}  // namespace

int GaleSystem::var_index(int i, int j) const {
    return flat_index(structure.block_sizes, i, j);
}

const Integer& GaleSystem::alpha(int k, int i, int j) const {
    return relations.alphas.at(k, column_of(relations.column_labels, i, j));
}

GaleSystem build_gale_system(const MixedStructure& ms, const RelationBasis& rb) {
    if (ms.l < 1)
        throw Error("Gale construction needs l >= 1");
    if (rb.alphas.rows() != ms.l || rb.alphas.cols() != ms.n + ms.l)
        throw Error("relation basis dimensions do not match the mixed structure");
    // The basis must annihilate the exponent matrix.
    ExponentMatrix w = exponent_matrix(ms);
    IntMatrix product = rb.alphas * w.rows;
    for (int r = 0; r < product.rows(); ++r)
        for (int c = 0; c < product.cols(); ++c)
            if (product.at(r, c) != 0)
                throw Error("relation basis does not annihilate the exponent matrix");
    return GaleSystem{ms, rb, ms.l};
}

std::vector<double> push_solution(const MixedStructure& ms, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != ms.n)
        throw Error("point dimension does not match ambient dimension");
    for (double c : x)
        if (c == 0.0)
            throw Error("push_solution requires a torus point (no zero coordinate)");
    std::vector<double> y;
    y.reserve(static_cast<std::size_t>(ms.l));
    for (int i = 0; i < ms.n; ++i)
        for (int j = 0; j < ms.block_sizes[i]; ++j) {
            double v = 1.0;
            for (int m = 0; m < ms.n; ++m)
                v *= std::pow(x[m], static_cast<double>(ms.body_exponents[i][j][m]));
            y.push_back(v);
        }
    return y;
}

double evaluate_p(const MixedStructure& ms, int i, const std::vector<double>& y) {
    double v = ms.constant_coeffs[i].get_d();
    int base = flat_index(ms.block_sizes, i, 1);
    for (int j = 0; j < ms.block_sizes[i]; ++j)
        v += ms.body_coeffs[i][j].get_d() * y[base + j];
    return v;
}

std::vector<double> gale_residuals(const GaleSystem& gs, const std::vector<double>& y) {
    const auto& ms = gs.structure;
    std::vector<double> res;
    for (int k = 0; k < gs.l; ++k) {
        double log_val = 0.0;
        for (int i = 0; i < ms.n; ++i) {
            log_val += gs.alpha(k, i, 0).get_d() * std::log(std::abs(evaluate_p(ms, i, y)));
            for (int j = 1; j <= ms.block_sizes[i]; ++j)
                log_val += gs.alpha(k, i, j).get_d() * std::log(std::abs(y[gs.var_index(i, j)]));
        }
        res.push_back(std::abs(std::exp(log_val) - 1.0));
    }
    return res;
}

FewnomialSystem gale_cleared_system(const GaleSystem& gs) {
    const auto& ms = gs.structure;
    const int l = gs.l;
    FewnomialSystem out;
    out.n = l;

    // p_i as a degree-1 polynomial in the y variables.
    std::vector<LaurentPolynomial> p;
    for (int i = 0; i < ms.n; ++i) {
        LaurentPolynomial pi(l);
        pi.add_term(ExponentVector(l, 0), ms.constant_coeffs[i]);
        for (int j = 1; j <= ms.block_sizes[i]; ++j) {
            ExponentVector e(l, 0);
            e[gs.var_index(i, j)] = 1;
            pi.add_term(e, ms.body_coeffs[i][j - 1]);
        }
        p.push_back(std::move(pi));
    }

    for (int k = 0; k < l; ++k) {
        LaurentPolynomial pos(l), neg(l);
        pos.add_term(ExponentVector(l, 0), Rational(1));
        neg.add_term(ExponentVector(l, 0), Rational(1));
        ExponentVector pos_mono(l, 0), neg_mono(l, 0);
        for (int i = 0; i < ms.n; ++i) {
            long a0 = gs.alpha(k, i, 0).get_si();
            for (long t = 0; t < (a0 > 0 ? a0 : -a0); ++t) {
                if (a0 > 0)
                    pos = pos * p[i];
                else
                    neg = neg * p[i];
            }
            for (int j = 1; j <= ms.block_sizes[i]; ++j) {
                long a = gs.alpha(k, i, j).get_si();
                if (a > 0)
                    pos_mono[gs.var_index(i, j)] += a;
                else
                    neg_mono[gs.var_index(i, j)] -= a;
            }
        }
        for (int t = 0; t < l; ++t) {  // multiply by the monomial parts
            pos_mono[t] = -pos_mono[t];
            neg_mono[t] = -neg_mono[t];
        }
        LaurentPolynomial eq = pos.divided_by_monomial(pos_mono) - neg.divided_by_monomial(neg_mono);
        if (eq.is_zero())
            throw Error("degenerate Gale equation (identically satisfied)");
        out.polynomials.push_back(std::move(eq));
    }
    return out;
}

int MasterFunctionSystem::var_index(int i, int j) const {
    return flat_index(block_sizes, i, j);
}

const Integer& MasterFunctionSystem::alpha(int k, int i, int j) const {
    return alphas.at(k, column_of(column_labels, i, j));
}

std::vector<Rational> MasterFunctionSystem::y_from_z(const std::vector<Rational>& z) const {
    std::vector<Rational> y(z.size());
    for (std::size_t t = 0; t < z.size(); ++t)
        y[t] = y_scale[t] * z[t];
    return y;
}

std::vector<Rational> MasterFunctionSystem::z_from_y(const std::vector<Rational>& y) const {
    std::vector<Rational> z(y.size());
    for (std::size_t t = 0; t < y.size(); ++t)
        z[t] = y[t] / y_scale[t];
    return z;
}

std::vector<double> MasterFunctionSystem::z_from_y(const std::vector<double>& y) const {
    std::vector<double> z(y.size());
    for (std::size_t t = 0; t < y.size(); ++t)
        z[t] = y[t] / y_scale[t].get_d();
    return z;
}

double MasterFunctionSystem::evaluate_q(int i, const std::vector<double>& z) const {
    double v = 1.0;
    int base = flat_index(block_sizes, i, 1);
    for (int j = 0; j < block_sizes[i]; ++j)
        v += z[base + j];
    return v;
}

MasterFunctionSystem normalize_to_z(const GaleSystem& gs) {
    const auto& ms = gs.structure;
    MasterFunctionSystem mfs;
    mfs.n = ms.n;
    mfs.l = ms.l;
    mfs.block_sizes = ms.block_sizes;
    mfs.alphas = gs.relations.alphas;
    mfs.column_labels = gs.relations.column_labels;
    mfs.b = ms.constant_coeffs;
    for (int i = 0; i < ms.n; ++i)
        for (int j = 0; j < ms.block_sizes[i]; ++j) {
            if (ms.body_coeffs[i][j] == 0)
                throw Error("zero coefficient in mixed structure");
            mfs.y_scale.push_back(ms.constant_coeffs[i] / ms.body_coeffs[i][j]);
        }
    for (int k = 0; k < ms.l; ++k) {
        Rational d = 1;
        for (int i = 0; i < ms.n; ++i) {
            long a0 = gs.alpha(k, i, 0).get_si();
            Rational babs = abs(ms.constant_coeffs[i]);
            // d_k = prod |b_i|^{-a0}
            for (long t = 0; t < (a0 > 0 ? a0 : -a0); ++t) {
                if (a0 > 0)
                    d /= babs;
                else
                    d *= babs;
            }
        }
        mfs.d.push_back(d);
    }
    return mfs;
}

std::vector<MixedStructure> enumerate_sign_systems(const MixedStructure& ms) {
    int bits = 0;
    for (int li : ms.block_sizes)
        bits += li + 1;
    if (bits > 20)
        throw Error("sign-system enumeration refused: more than 2^20 variants");
    std::vector<MixedStructure> out;
    out.reserve(1u << bits);
    for (unsigned long mask = 0; mask < (1ul << bits); ++mask) {
        MixedStructure variant = ms;
        int bit = 0;
        for (int i = 0; i < ms.n; ++i) {
            if (mask >> bit++ & 1)
                variant.constant_coeffs[i] = -variant.constant_coeffs[i];
            for (int j = 0; j < ms.block_sizes[i]; ++j)
                if (mask >> bit++ & 1)
                    variant.body_coeffs[i][j] = -variant.body_coeffs[i][j];
        }
        out.push_back(std::move(variant));
    }
    return out;
}

MasterValue evaluate_master(const MasterFunctionSystem& mfs, int k, const std::vector<double>& z) {
    if (k < 0 || k >= mfs.l)
        throw Error("master-function index out of range");
    double phi = 0.0;
    for (int i = 0; i < mfs.n; ++i) {
        double q = mfs.evaluate_q(i, z);
        if (q == 0.0)
            throw Error("point lies on the arrangement: q_" + std::to_string(i + 1) + " = 0");
        phi += mfs.alpha(k, i, 0).get_d() * std::log(std::abs(q));
        for (int j = 1; j <= mfs.block_sizes[i]; ++j) {
            double zv = z[mfs.var_index(i, j)];
            if (zv == 0.0)
                throw Error("point lies on the arrangement: z = 0 coordinate");
            phi += mfs.alpha(k, i, j).get_d() * std::log(std::abs(zv));
        }
    }
    MasterValue v;
    v.phi = phi;
    v.f = std::exp(phi);
    v.g = v.f - mfs.d[k].get_d();
    return v;
}

bool SignVector::all_positive() const {
    for (int s : z_signs)
        if (s < 0)
            return false;
    for (int s : q_signs)
        if (s < 0)
            return false;
    return true;
}

SignVector chamber_of(const MasterFunctionSystem& mfs, const std::vector<double>& z) {
    SignVector sv;
    for (double zv : z) {
        if (zv == 0.0)
            throw Error("point lies on the arrangement: z = 0 coordinate");
        sv.z_signs.push_back(zv > 0 ? 1 : -1);
    }
    for (int i = 0; i < mfs.n; ++i) {
        double q = mfs.evaluate_q(i, z);
        if (q == 0.0)
            throw Error("point lies on the arrangement: q_" + std::to_string(i + 1) + " = 0");
        sv.q_signs.push_back(q > 0 ? 1 : -1);
    }
    return sv;
}

}  // namespace fewnomial
