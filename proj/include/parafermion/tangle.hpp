#pragma once

#include "parafermion/pf.hpp"

namespace pf {

struct tangle_parse_error : std::runtime_error {
    int line;
    tangle_parse_error(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct Slice {
    enum class Kind { cup, cap, label, braid_pos, braid_neg };
    Kind kind;
    int pos;        // 1-based strand position at that level
    int power = 0;  // for labels
};

/// Parsed slice-sequence form of a labelled planar tangle, bottom to top.
struct TangleWord {
    CtxPtr ctx;
    int in_strands = 0;
    int out_strands = 0;
    std::vector<Slice> slices;
};

/// Grammar (one slice per line, '#' comments): header lines `N=<int>`,
/// `in=<int>`; slices `cup@P`, `cap@P`, `c^J@P`, `pos@P`, `neg@P`.
TangleWord parse_tangle(const std::string& text, Mode mode = Mode::exact, int zeta_sign = +1);
TangleWord parse_tangle(const CtxPtr& ctx, const std::string& text);

struct TangleValue {
    bool closed = false;
    Scalar scalar;       // set when closed
    PFElement element;   // hom-space element (always set for open tangles)
    bool has_operator = false;
    DenseOperator op;    // jw image when in == out
};

/// Exact evaluation of a tangle word in the paired-strand representation:
/// labels and crossings act through the representation, cups and caps act by
/// the derived intertwiners, so all loop and rotation values come out with
/// the circle parameter sqrt(N).
TangleValue evaluate_tangle(const TangleWord& word);

/// One label on a closed circle: power, half-turn count of its box relative
/// to the upright frame (two half-turns are one full 2pi rotation and carry
/// q^{power^2}), and whether the label sits left or right of the circle in
/// the standard cup/cap presentation.  Listed bottom-to-top in slice order.
struct LoopLabel {
    int leg;        // 1 = left strand, 2 = right strand
    int power;
    int winding;    // full clockwise 2pi rotations of the box, in {-1,0,1,...}
};

/// Independent bookkeeping evaluation of a single labelled circle: the trace
/// rule kills total power != 0 mod N, each full winding contributes
/// q^{winding * power^2}, each right-leg label carries the half-turn phase
/// zeta^{-power^2}, and each exchange of heights across the legs contributes
/// the bicharacter phase.
Scalar closed_loop_oracle(const CtxPtr& ctx, const std::vector<LoopLabel>& labels);

}  // namespace pf
