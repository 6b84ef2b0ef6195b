#include "parafermion/tangle.hpp"

#include <sstream>

namespace pf {

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

static TangleWord parse_impl(CtxPtr ctx, Mode mode, int zeta_sign, const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    int N = ctx ? ctx->N : 0;
    int in_strands = 0;
    bool saw_slice = false;
    std::vector<Slice> slices;
    int cur = 0;
    bool cur_init = false;

    auto ensure_ctx = [&](int ln) {
        if (!ctx) throw tangle_parse_error(ln, "missing N=<int> header");
    };

    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t first = 0;
        while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first])))
            ++first;
        line = line.substr(first);
        if (line.empty()) continue;

        if (line.rfind("N=", 0) == 0) {
            if (saw_slice) throw tangle_parse_error(lineno, "N= header must precede slices");
            int n = std::stoi(line.substr(2));
            if (n < 2) throw tangle_parse_error(lineno, "N must be >= 2");
            ctx = make_context(n, zeta_sign, mode);
            N = n;
            continue;
        }
        if (line.rfind("in=", 0) == 0) {
            if (saw_slice) throw tangle_parse_error(lineno, "in= header must precede slices");
            in_strands = std::stoi(line.substr(3));
            if (in_strands < 0) throw tangle_parse_error(lineno, "in must be >= 0");
            continue;
        }

        auto at = line.find('@');
        if (at == std::string::npos) throw tangle_parse_error(lineno, "unknown token: " + line);
        std::string head = line.substr(0, at);
        int p = 0;
        try {
            size_t used = 0;
            p = std::stoi(line.substr(at + 1), &used);
            if (at + 1 + used != line.size()) throw std::invalid_argument("");
        } catch (...) {
            throw tangle_parse_error(lineno, "bad position in: " + line);
        }
        ensure_ctx(lineno);
        if (!cur_init) {
            cur = in_strands;
            cur_init = true;
        }
        saw_slice = true;

        Slice s{};
        s.pos = p;
        if (head == "cup") {
            s.kind = Slice::Kind::cup;
            if (p < 1 || p > cur + 1)
                throw tangle_parse_error(lineno, "cup position out of range");
            cur += 2;
        } else if (head == "cap") {
            s.kind = Slice::Kind::cap;
            if (cur < 2) throw tangle_parse_error(lineno, "cap with fewer than 2 strands");
            if (p < 1 || p > cur - 1)
                throw tangle_parse_error(lineno, "cap position out of range");
            cur -= 2;
        } else if (head == "pos" || head == "neg") {
            s.kind = head == "pos" ? Slice::Kind::braid_pos : Slice::Kind::braid_neg;
            if (p < 1 || p > cur - 1)
                throw tangle_parse_error(lineno, "crossing position out of range");
        } else if (head.rfind("c^", 0) == 0) {
            s.kind = Slice::Kind::label;
            try {
                s.power = std::stoi(head.substr(2));
            } catch (...) {
                throw tangle_parse_error(lineno, "bad label power in: " + line);
            }
            s.power = ((s.power % N) + N) % N;
            if (p < 1 || p > cur) throw tangle_parse_error(lineno, "label position out of range");
        } else {
            throw tangle_parse_error(lineno, "unknown token: " + line);
        }
        slices.push_back(s);
    }
    if (!ctx) throw tangle_parse_error(lineno, "missing N=<int> header");
    if (!cur_init) cur = in_strands;
    TangleWord w;
    w.ctx = ctx;
    w.in_strands = in_strands;
    w.out_strands = cur;
    w.slices = std::move(slices);
    if ((w.in_strands + w.out_strands) % 2 != 0)
        throw tangle_parse_error(lineno, "in + out strand count must be even");
    return w;
}

TangleWord parse_tangle(const std::string& text, Mode mode, int zeta_sign) {
    return parse_impl(nullptr, mode, zeta_sign, text);
}

TangleWord parse_tangle(const CtxPtr& ctx, const std::string& text) {
    return parse_impl(ctx, ctx->mode, ctx->zeta_sign, text);
}

// ---------------------------------------------------------------------------
// Evaluator: state vector in the paired-strand representation
// ---------------------------------------------------------------------------

namespace {

struct EvalState {
    CtxPtr ctx;
    int w = 0;  // qudit slots; strand count is 2w
    std::vector<Scalar> v;

    explicit EvalState(CtxPtr c) : ctx(std::move(c)) { v.assign(1, Scalar::one(ctx)); }

    long dim() const { return static_cast<long>(v.size()); }
    int N() const { return ctx->N; }

    int digit(long idx, int slot) const {  // 1-based slot, slot 1 most significant
        long sl = 1;
        for (int s = slot + 1; s <= w; ++s) sl *= N();
        return static_cast<int>((idx / sl) % N());
    }
    long with_digit(long idx, int slot, int val) const {
        long sl = 1;
        for (int s = slot + 1; s <= w; ++s) sl *= N();
        return idx + (static_cast<long>(val) - digit(idx, slot)) * sl;
    }
    int prefix_sum(long idx, int upto) const {
        int acc = 0;
        for (int s = 1; s <= upto; ++s) acc += digit(idx, s);
        return acc;
    }

    void label(int p, int j) {
        int N_ = N();
        std::vector<Scalar> nv(v.size(), Scalar::zero(ctx));
        int t = (p + 1) / 2;
        bool even = (p % 2 == 0);
        for (long idx = 0; idx < dim(); ++idx) {
            if (v[idx].is_zero()) continue;
            long phase = -static_cast<long>(j) * prefix_sum(idx, t - 1);
            if (even) phase -= static_cast<long>(j) * digit(idx, t);
            Scalar c = v[idx] * ctx->q_pow(phase);
            if (even) c = c * ctx->zeta_pow(-static_cast<long>(j) * j);
            nv[with_digit(idx, t, (digit(idx, t) + j) % N_)] += c;
        }
        v = std::move(nv);
    }

    void braid(int p, bool positive) {
        int N_ = N();
        if (p % 2 == 1) {  // both legs of one slot: diagonal Gaussian twist
            int t = (p + 1) / 2;
            Scalar pref = positive ? ctx->omega_sqrt() : ctx->omega_sqrt().inverse();
            for (long idx = 0; idx < dim(); ++idx) {
                if (v[idx].is_zero()) continue;
                long k = digit(idx, t);
                v[idx] = v[idx] * pref * ctx->zeta_pow((positive ? -1L : 1L) * k * k);
            }
            return;
        }
        int t = p / 2;  // acts on slots (t, t+1)
        Scalar pref = ctx->sqrt_n().inverse() *
                      (positive ? ctx->omega_sqrt().inverse() : ctx->omega_sqrt());
        std::vector<Scalar> nv(v.size(), Scalar::zero(ctx));
        for (long idx = 0; idx < dim(); ++idx) {
            if (v[idx].is_zero()) continue;
            int kt = digit(idx, t), ku = digit(idx, t + 1);
            for (int i = 0; i < N_; ++i) {
                Scalar c = v[idx] * pref * ctx->zeta_pow((positive ? 1L : -1L) * i * i);
                long target = with_digit(idx, t, (kt - i + N_) % N_);
                target = with_digit(target, t + 1, (ku + i) % N_);
                nv[target] += c;
            }
        }
        v = std::move(nv);
    }

    void cup(int p) {
        int N_ = N();
        long ndim = dim() * N_;
        std::vector<Scalar> nv(ndim, Scalar::zero(ctx));
        if (p % 2 == 1) {  // fresh slot (p+1)/2 in state |0>, weight sqrt(N)
            int slot = (p + 1) / 2;
            Scalar rootN = ctx->sqrt_n();
            for (long idx = 0; idx < dim(); ++idx) {
                if (v[idx].is_zero()) continue;
                nv[insert_digit(idx, slot, 0)] = v[idx] * rootN;
            }
        } else {  // split slot t: |a> -> sum_d |a+d, -d>
            int t = p / 2;
            for (long idx = 0; idx < dim(); ++idx) {
                if (v[idx].is_zero()) continue;
                int a = digit(idx, t);
                for (int d = 0; d < N_; ++d) {
                    long target = with_digit(idx, t, (a + d) % N_);
                    nv[insert_digit(target, t + 1, (N_ - d) % N_)] = v[idx];
                }
            }
        }
        ++w;
        v = std::move(nv);
    }

    void cap(int p) {
        int N_ = N();
        long ndim = dim() / N_;
        std::vector<Scalar> nv(ndim, Scalar::zero(ctx));
        if (p % 2 == 1) {  // project slot (p+1)/2 onto |0> and drop it
            int slot = (p + 1) / 2;
            for (long idx = 0; idx < dim(); ++idx) {
                if (v[idx].is_zero() || digit(idx, slot) != 0) continue;
                nv[remove_digit(idx, slot)] += v[idx];
            }
        } else {  // fuse slots (t, t+1): |b,c> -> N^{-1/2} |b+c>
            int t = p / 2;
            Scalar inv_rootN = ctx->sqrt_n().inverse();
            for (long idx = 0; idx < dim(); ++idx) {
                if (v[idx].is_zero()) continue;
                int b = digit(idx, t), c = digit(idx, t + 1);
                long target = with_digit(idx, t, (b + c) % N_);
                nv[remove_digit(target, t + 1)] += v[idx] * inv_rootN;
            }
        }
        --w;
        v = std::move(nv);
    }

  private:
    long insert_digit(long idx, int slot, int val) const {
        long hi = idx, lo = 0, base = 1;
        for (int s = w; s >= slot; --s) {
            lo += (hi % N()) * base;
            hi /= N();
            base *= N();
        }
        return (hi * N() + val) * base + lo;
    }
    long remove_digit(long idx, int slot) const {
        long hi = idx, lo = 0, base = 1;
        for (int s = w; s > slot; --s) {
            lo += (hi % N()) * base;
            hi /= N();
            base *= N();
        }
        hi /= N();
        return hi * base + lo;
    }
};

}  // namespace

TangleValue evaluate_tangle(const TangleWord& word) {
    const CtxPtr& ctx = word.ctx;
    EvalState st(ctx);
    for (int p = 1; p <= word.in_strands; ++p) st.cup(p);  // bend inputs up
    for (const auto& s : word.slices) {
        switch (s.kind) {
            case Slice::Kind::cup: st.cup(s.pos); break;
            case Slice::Kind::cap: st.cap(s.pos); break;
            case Slice::Kind::label: st.label(s.pos, s.power); break;
            case Slice::Kind::braid_pos: st.braid(s.pos, true); break;
            case Slice::Kind::braid_neg: st.braid(s.pos, false); break;
        }
    }
    TangleValue out;
    if (word.in_strands == 0 && word.out_strands == 0) {
        out.closed = true;
        out.scalar = st.v[0];
        return out;
    }
    // unbend: solve state = sum_J z_J pi(C_J on the left strands)|vacuum>
    int w = (word.in_strands + word.out_strands) / 2;
    auto om = pair_vacuum(ctx, w);
    long dim = static_cast<long>(om.size());
    auto indices = all_multi_indices(ctx->N, w);
    std::vector<std::vector<Scalar>> mat(dim, std::vector<Scalar>(dim + 1, Scalar::zero(ctx)));
    for (long col = 0; col < dim; ++col) {
        PFElement cj = PFElement::monomial(ctx, w, indices[col], Scalar::one(ctx)).embed(2 * w, 0);
        DenseOperator pj = pair_rep(cj);
        for (long r = 0; r < dim; ++r) {
            Scalar acc = Scalar::zero(ctx);
            for (long c2 = 0; c2 < dim; ++c2)
                if (!pj.at(r, c2).is_zero() && !om[c2].is_zero()) acc += pj.at(r, c2) * om[c2];
            mat[r][col] = acc;
        }
    }
    for (long r = 0; r < dim; ++r) mat[r][dim] = st.v[r];
    for (long col = 0, row = 0; col < dim && row < dim; ++col) {
        long piv = -1;
        for (long r = row; r < dim; ++r)
            if (!mat[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) throw std::runtime_error("evaluate_tangle: singular unbending system");
        std::swap(mat[piv], mat[row]);
        Scalar inv = mat[row][col].inverse();
        for (long k = col; k <= dim; ++k) mat[row][k] = mat[row][k] * inv;
        for (long r = 0; r < dim; ++r) {
            if (r == row || mat[r][col].is_zero()) continue;
            Scalar f = mat[r][col];
            for (long k = col; k <= dim; ++k) mat[r][k] = mat[r][k] - f * mat[row][k];
        }
        ++row;
    }
    PFElement z = PFElement::zero(ctx, w);
    for (long i = 0; i < dim; ++i)
        z = z + PFElement::monomial(ctx, w, indices[i], mat[i][dim]);
    out.element = z;
    if (word.in_strands == word.out_strands) {
        out.has_operator = true;
        out.op = z.jw();
    }
    return out;
}

Scalar closed_loop_oracle(const CtxPtr& ctx, const std::vector<LoopLabel>& labels) {
    long total = 0;
    for (const auto& l : labels) total += l.power;
    if (((total % ctx->N) + ctx->N) % ctx->N != 0) return Scalar::zero(ctx);
    Scalar phase = Scalar::one(ctx);
    for (size_t t = 0; t < labels.size(); ++t) {
        const auto& l = labels[t];
        phase = phase * ctx->q_pow(static_cast<long>(l.winding) * l.power * l.power);
        if (l.leg == 2) {
            // half turn around the cap, plus the height exchanges against
            // every label placed below it
            phase = phase * ctx->zeta_pow(-static_cast<long>(l.power) * l.power);
            for (size_t s = 0; s < t; ++s)
                phase = phase * ctx->q_pow(-static_cast<long>(labels[s].power) * l.power);
        }
    }
    return phase * ctx->sqrt_n();
}

}  // namespace pf
