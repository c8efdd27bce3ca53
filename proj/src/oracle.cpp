#include "sival/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sival/interval_io.hpp"

namespace sival::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running hull of a set of exact values, with flags for the unbounded
// directions.
struct Hull {
    bool any = false;
    mpq_class lo;
    mpq_class hi;
    bool unbounded_below = false;
    bool unbounded_above = false;

    void add(const mpq_class& v)
    {
        if (!any) {
            lo = v;
            hi = v;
            any = true;
            return;
        }
        if (v < lo) {
            lo = v;
        }
        if (v > hi) {
            hi = v;
        }
    }

    RationalInterval result() const
    {
        if (!any && !unbounded_below && !unbounded_above) {
            return RationalInterval::make_empty();
        }
        RationalInterval r;
        if (!unbounded_below) {
            r.lo = lo;
        }
        if (!unbounded_above) {
            r.hi = hi;
        }
        return r;
    }
};

std::vector<mpq_class> grid_points(const RationalInterval& x, std::size_t grid)
{
    std::vector<mpq_class> pts;
    const mpq_class& lo = *x.lo;
    const mpq_class& hi = *x.hi;
    for (std::size_t k = 0; k < grid; ++k) {
        mpq_class t(static_cast<unsigned long>(k), static_cast<unsigned long>(grid - 1));
        t.canonicalize();
        pts.push_back(lo + (hi - lo) * t);
    }
    if (lo < 0 && 0 < hi) {
        pts.emplace_back(0);
    }
    return pts;
}

std::optional<mpq_class> exact_sqrt(const mpq_class& q)
{
    if (q < 0) {
        return std::nullopt;
    }
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

void require_bounded(const RationalInterval& x, const char* what)
{
    if (!x.is_bounded()) {
        throw std::domain_error(std::string("relational_oracle: unbounded ") + what +
                                " is only classified symbolically");
    }
}

RationalInterval div_oracle(const RationalInterval& x, const RationalInterval& y, std::size_t grid)
{
    if (x.empty || y.empty) {
        return RationalInterval::make_empty();
    }
    Hull h;
    const auto xs = grid_points(x, grid);
    const auto ys = grid_points(y, grid);
    for (const auto& xv : xs) {
        for (const auto& yv : ys) {
            if (yv != 0) {
                h.add(xv / yv);
            } else if (xv == 0) {
                // z * 0 == 0 for every z.
                return RationalInterval::entire();
            }
        }
    }
    // y -> 0 from either side with a fixed non-zero x: |z| grows without
    // bound, with sign(x) * sign(y).
    const bool has_pos_x = *x.hi > 0;
    const bool has_neg_x = *x.lo < 0;
    if (y.contains(0)) {
        if (*y.hi > 0) {
            h.unbounded_above = h.unbounded_above || has_pos_x;
            h.unbounded_below = h.unbounded_below || has_neg_x;
        }
        if (*y.lo < 0) {
            h.unbounded_below = h.unbounded_below || has_pos_x;
            h.unbounded_above = h.unbounded_above || has_neg_x;
        }
    }
    return h.result();
}

RationalInterval sqrt_rel_oracle(const RationalInterval& x, std::size_t grid)
{
    if (x.empty || *x.hi < 0) {
        return RationalInterval::make_empty();
    }
    // Every root lies in [-bound, bound].
    mpz_class ceil_hi;
    mpz_cdiv_q(ceil_hi.get_mpz_t(), x.hi->get_num_mpz_t(), x.hi->get_den_mpz_t());
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), ceil_hi.get_mpz_t());
    bound += 1;

    std::vector<mpq_class> candidates;
    const mpq_class b(bound);
    for (std::size_t k = 0; k < grid; ++k) {
        mpq_class t(static_cast<unsigned long>(k), static_cast<unsigned long>(grid - 1));
        t.canonicalize();
        candidates.push_back(-b + 2 * b * t);
    }
    for (const mpq_class* end : {&*x.lo, &*x.hi}) {
        if (auto r = exact_sqrt(*end)) {
            candidates.push_back(*r);
            candidates.push_back(-*r);
        }
    }
    Hull h;
    for (const auto& c : candidates) {
        if (x.contains(c * c)) {
            h.add(c);
        }
    }
    return h.result();
}

bool is_corner_class(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return true;
    case Expr::Kind::unary:
        return e.unary_op() == UnaryOp::neg && is_corner_class(e.child());
    case Expr::Kind::binary:
        return e.binary_op() != BinaryOp::div && is_corner_class(e.left()) && is_corner_class(e.right());
    }
    return false;
}

mpq_class eval_exact(const Expr& e, const std::map<std::string, mpq_class>& env)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return env.at(e.name());
    case Expr::Kind::unary:
        return -eval_exact(e.child(), env);
    case Expr::Kind::binary: {
        const mpq_class a = eval_exact(e.left(), env);
        const mpq_class b = eval_exact(e.right(), env);
        switch (e.binary_op()) {
        case BinaryOp::add:
            return a + b;
        case BinaryOp::sub:
            return a - b;
        case BinaryOp::mul:
            return a * b;
        case BinaryOp::div:
            break;
        }
        break;
    }
    }
    throw std::logic_error("eval_exact: unsupported node");
}

double eval_margin(const Expr& e, const std::map<std::string, double>& env, double& margin)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return env.at(e.name());
    case Expr::Kind::unary: {
        const double v = eval_margin(e.child(), env, margin);
        switch (e.unary_op()) {
        case UnaryOp::neg:
            return -v;
        case UnaryOp::abs:
            return std::fabs(v);
        case UnaryOp::sqrt:
        case UnaryOp::sqrt_rel:
            margin = std::min(margin, v);
            return std::sqrt(std::max(v, 0.0));
        }
        break;
    }
    case Expr::Kind::binary: {
        const double a = eval_margin(e.left(), env, margin);
        const double b = eval_margin(e.right(), env, margin);
        switch (e.binary_op()) {
        case BinaryOp::add:
            return a + b;
        case BinaryOp::sub:
            return a - b;
        case BinaryOp::mul:
            return a * b;
        case BinaryOp::div:
            margin = std::min(margin, std::fabs(b));
            return b == 0 ? 0.0 : a / b;
        }
        break;
    }
    }
    return 0.0;
}

mpq_class exact(double v)
{
    return mpq_class(v);
}

const std::vector<std::string>& variable_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n{"x", "y", "z", "w"};
        for (int i = 4; i < 64; ++i) {
            n.push_back("v" + std::to_string(i));
        }
        return n;
    }();
    return names;
}

std::size_t min_depth_for(std::size_t leaves)
{
    std::size_t d = 0;
    while ((std::size_t{1} << d) < leaves) {
        ++d;
    }
    return d;
}

class SingleOccurrenceBuilder {
  public:
    SingleOccurrenceBuilder(std::mt19937_64& rng, const ExprGenOptions& opts, std::vector<std::string> names)
        : rng_(rng), opts_(opts), names_(std::move(names))
    {
    }

    Expr build(std::size_t leaves, std::size_t budget)
    {
        std::bernoulli_distribution wrap(0.2);
        if (!opts_.unary_ops.empty() && budget > min_depth_for(leaves) && wrap(rng_)) {
            const auto op = pick(opts_.unary_ops);
            return Expr::unary(op, build(leaves, budget - 1));
        }
        if (leaves == 1) {
            return Expr::var(names_[next_name_++]);
        }
        std::vector<std::size_t> splits;
        for (std::size_t l = 1; l < leaves; ++l) {
            if (budget >= 1 + std::max(min_depth_for(l), min_depth_for(leaves - l))) {
                splits.push_back(l);
            }
        }
        const std::size_t l = pick(splits);
        const auto op = pick(opts_.binary_ops);
        Expr left = build(l, budget - 1);
        Expr right = build(leaves - l, budget - 1);
        return Expr::binary(op, std::move(left), std::move(right));
    }

  private:
    template <class T>
    T pick(const std::vector<T>& v)
    {
        std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
        return v[d(rng_)];
    }

    std::mt19937_64& rng_;
    const ExprGenOptions& opts_;
    std::vector<std::string> names_;
    std::size_t next_name_ = 0;
};

Expr random_general(std::mt19937_64& rng, const ExprGenOptions& opts, std::size_t nvars, std::size_t remaining,
                    bool root)
{
    std::bernoulli_distribution leaf(opts.leaf_probability);
    const std::size_t n_ops = opts.unary_ops.size() + opts.binary_ops.size();
    if (remaining == 0 || n_ops == 0 || (!root && leaf(rng))) {
        std::uniform_int_distribution<std::size_t> pick(0, nvars - 1);
        return Expr::var(variable_names()[pick(rng)]);
    }
    std::uniform_int_distribution<std::size_t> pick_op(0, n_ops - 1);
    const std::size_t k = pick_op(rng);
    if (k < opts.unary_ops.size()) {
        return Expr::unary(opts.unary_ops[k], random_general(rng, opts, nvars, remaining - 1, false));
    }
    Expr left = random_general(rng, opts, nvars, remaining - 1, false);
    Expr right = random_general(rng, opts, nvars, remaining - 1, false);
    return Expr::binary(opts.binary_ops[k - opts.unary_ops.size()], std::move(left), std::move(right));
}

double snap(double v, bool dyadic)
{
    return dyadic ? std::round(v * 16) / 16 : v;
}

} // namespace

RationalInterval RationalInterval::make_empty()
{
    RationalInterval r;
    r.empty = true;
    return r;
}

RationalInterval RationalInterval::bounded(mpq_class lo, mpq_class hi)
{
    if (hi < lo) {
        return make_empty();
    }
    RationalInterval r;
    r.lo = std::move(lo);
    r.hi = std::move(hi);
    return r;
}

RationalInterval RationalInterval::entire()
{
    return RationalInterval{};
}

RationalInterval RationalInterval::of(const Interval& x)
{
    if (x.is_empty()) {
        return make_empty();
    }
    RationalInterval r;
    if (std::isfinite(x.lo())) {
        r.lo = exact(x.lo());
    }
    if (std::isfinite(x.hi())) {
        r.hi = exact(x.hi());
    }
    return r;
}

bool RationalInterval::contains(const mpq_class& v) const
{
    if (empty) {
        return false;
    }
    return (!lo || *lo <= v) && (!hi || v <= *hi);
}

std::string to_string(const RationalInterval& x)
{
    if (x.empty) {
        return "empty";
    }
    return "[" + (x.lo ? x.lo->get_str() : std::string("-inf")) + "," + (x.hi ? x.hi->get_str() : std::string("inf")) +
           "]";
}

RationalInterval relational_oracle(Op op, const RationalInterval& x, const RationalInterval& y, std::size_t grid)
{
    if (grid < 2) {
        throw std::domain_error("relational_oracle: grid must be at least 2");
    }
    require_bounded(x, "X");
    if (op == Op::sqrt_rel) {
        return sqrt_rel_oracle(x, grid);
    }
    require_bounded(y, "Y");
    if (op == Op::div) {
        return div_oracle(x, y, grid);
    }
    if (x.empty || y.empty) {
        return RationalInterval::make_empty();
    }
    const mpq_class &xl = *x.lo, &xh = *x.hi, &yl = *y.lo, &yh = *y.hi;
    switch (op) {
    case Op::add:
        return RationalInterval::bounded(xl + yl, xh + yh);
    case Op::sub:
        return RationalInterval::bounded(xl - yh, xh - yl);
    case Op::mul: {
        Hull h;
        for (const auto* a : {&xl, &xh}) {
            for (const auto* b : {&yl, &yh}) {
                h.add(*a * *b);
            }
        }
        return h.result();
    }
    default:
        break;
    }
    throw std::logic_error("relational_oracle: unhandled operation");
}

RationalInterval corner_range_oracle(const Expr& e, const Box& box)
{
    const auto& vars = e.variables();
    if (!occurs_once(e) || !is_corner_class(e)) {
        throw std::invalid_argument("corner_range_oracle: needs a single-occurrence expression over +, -, *, neg");
    }
    if (box.size() != vars.size() || box.is_empty() || !box.is_bounded()) {
        throw std::invalid_argument("corner_range_oracle: box must be bounded, non-empty and match the variables");
    }
    if (vars.size() > 20) {
        throw std::invalid_argument("corner_range_oracle: too many variables to enumerate corners");
    }
    Hull h;
    std::map<std::string, mpq_class> env;
    for (std::size_t mask = 0; mask < (std::size_t{1} << vars.size()); ++mask) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            env[vars[i]] = exact((mask >> i) & 1 ? box[i].hi() : box[i].lo());
        }
        h.add(eval_exact(e, env));
    }
    return h.result();
}

std::size_t sample_inclusion(const Expr& e, const Interpretation& interp, const Box& box, std::size_t samples,
                             std::uint64_t seed)
{
    if (!box.is_bounded()) {
        throw std::invalid_argument("sample_inclusion: box must be bounded");
    }
    if (box.is_empty()) {
        return 0;
    }
    const Interval enclosure = eval_interval(e, interp, box);
    std::mt19937_64 rng(seed);
    std::size_t violations = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto p = random_point(rng, box);
        const RealResult v = eval_real(e, interp, p);
        if (v && !member(*v, enclosure)) {
            ++violations;
        }
    }
    return violations;
}

bool encloses(const Interval& enclosure, const RationalInterval& exact_range)
{
    if (exact_range.empty) {
        return true;
    }
    if (enclosure.is_empty()) {
        return false;
    }
    const bool lo_ok = enclosure.lo() == -kInf || (exact_range.lo && exact(enclosure.lo()) <= *exact_range.lo);
    const bool hi_ok = enclosure.hi() == kInf || (exact_range.hi && *exact_range.hi <= exact(enclosure.hi()));
    return lo_ok && hi_ok;
}

bool within_one_ulp(const Interval& enclosure, const RationalInterval& exact_range)
{
    if (exact_range.empty || enclosure.is_empty()) {
        return exact_range.empty == enclosure.is_empty();
    }
    if (!encloses(enclosure, exact_range)) {
        return false;
    }
    // L <= r must leave at most one representable value between L and the
    // greatest double <= r, i.e. r < next(next(L)).
    if (!exact_range.lo) {
        if (enclosure.lo() != -kInf) {
            return false;
        }
    } else {
        const double two_up = std::nextafter(std::nextafter(enclosure.lo(), kInf), kInf);
        if (std::isfinite(two_up) && !(*exact_range.lo < exact(two_up))) {
            return false;
        }
    }
    if (!exact_range.hi) {
        if (enclosure.hi() != kInf) {
            return false;
        }
    } else {
        const double two_down = std::nextafter(std::nextafter(enclosure.hi(), -kInf), -kInf);
        if (std::isfinite(two_down) && !(exact(two_down) < *exact_range.hi)) {
            return false;
        }
    }
    return true;
}

Expr random_expression(std::mt19937_64& rng, const ExprGenOptions& options)
{
    const std::size_t max_vars = std::clamp<std::size_t>(options.max_vars, 1, variable_names().size());
    std::uniform_int_distribution<std::size_t> nvars_dist(1, max_vars);
    if (options.single_occurrence) {
        // With leaves <= max_vars the tree fits in the depth budget.
        std::size_t leaves = nvars_dist(rng);
        while (min_depth_for(leaves) > options.max_depth) {
            --leaves;
        }
        if (options.binary_ops.empty()) {
            leaves = 1;
        }
        std::vector<std::string> names(variable_names().begin(), variable_names().begin() + leaves);
        std::shuffle(names.begin(), names.end(), rng);
        return SingleOccurrenceBuilder(rng, options, std::move(names)).build(leaves, options.max_depth);
    }
    return random_general(rng, options, nvars_dist(rng), options.max_depth, true);
}

Box random_box(std::mt19937_64& rng, std::size_t arity, const BoxGenOptions& options)
{
    std::uniform_real_distribution<double> pos(-options.magnitude, options.magnitude);
    std::uniform_real_distribution<double> wid(0.0, options.max_width);
    std::uniform_int_distribution<int> shape(0, 9);
    std::vector<Interval> dims;
    dims.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) {
        const int s = options.special_shapes ? shape(rng) : 9;
        const double a = snap(pos(rng), options.dyadic);
        const double w = snap(wid(rng), options.dyadic);
        switch (s) {
        case 0:
            dims.emplace_back(a, a);
            break;
        case 1:
            dims.emplace_back(0.0, 0.0);
            break;
        case 2:
            dims.emplace_back(0.0, w);
            break;
        case 3:
            dims.emplace_back(-w, 0.0);
            break;
        case 4: {
            const double w2 = snap(wid(rng), options.dyadic);
            dims.emplace_back(-w, w2);
            break;
        }
        default: {
            const double b = snap(a + w, options.dyadic);
            dims.emplace_back(std::min(a, b), std::max(a, b));
            break;
        }
        }
    }
    return Box(std::move(dims));
}

std::vector<double> random_point(std::mt19937_64& rng, const Box& box)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> p;
    p.reserve(box.size());
    for (const Interval& d : box) {
        const double u = unit(rng);
        const double v = d.lo() * (1 - u) + d.hi() * u;
        p.push_back(std::clamp(v, d.lo(), d.hi()));
    }
    return p;
}

double singularity_margin(const Expr& e, std::span<const double> point)
{
    const auto& vars = e.variables();
    if (point.size() != vars.size()) {
        throw ArityError("singularity_margin: arity mismatch");
    }
    std::map<std::string, double> env;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        env[vars[i]] = point[i];
    }
    double margin = kInf;
    (void)eval_margin(e, env, margin);
    return std::isnan(margin) ? -kInf : margin;
}

std::optional<ManifestCase> parse_manifest_line(std::string_view line)
{
    std::istringstream in{std::string(line)};
    std::vector<std::string> fields;
    for (std::string f; in >> f;) {
        fields.push_back(f);
    }
    if (fields.empty() || fields[0][0] == '#') {
        return std::nullopt;
    }
    if (fields.size() < 4) {
        throw std::invalid_argument("manifest line needs 'seed expr box expected-check': " + std::string(line));
    }
    ManifestCase c;
    try {
        c.seed = std::stoull(fields[0]);
    } catch (const std::exception&) {
        throw std::invalid_argument("manifest: bad seed '" + fields[0] + "'");
    }
    for (std::size_t i = 1; i + 2 < fields.size(); ++i) {
        c.expr += (i > 1 ? " " : "") + fields[i];
    }
    const std::string& box_field = fields[fields.size() - 2];
    std::vector<Interval> dims;
    std::size_t start = 0;
    for (;;) {
        const auto semi = box_field.find(';', start);
        dims.push_back(parse_interval(box_field.substr(start, semi - start)));
        if (semi == std::string::npos) {
            break;
        }
        start = semi + 1;
    }
    c.box = Box(std::move(dims));
    const std::string& check = fields.back();
    constexpr std::string_view prefix = "violations=";
    if (check.rfind(prefix, 0) != 0) {
        throw std::invalid_argument("manifest: expected-check must be 'violations=N', got '" + check + "'");
    }
    try {
        c.expected_violations = std::stoul(check.substr(prefix.size()));
    } catch (const std::exception&) {
        throw std::invalid_argument("manifest: bad violation count in '" + check + "'");
    }
    return c;
}

std::string format_manifest_line(const ManifestCase& c)
{
    std::string expr;
    for (char ch : c.expr) {
        if (ch != ' ') {
            expr += ch;
        }
    }
    std::string box;
    for (std::size_t i = 0; i < c.box.size(); ++i) {
        box += (i > 0 ? ";" : "") + format_interval(c.box[i]);
    }
    return std::to_string(c.seed) + " " + expr + " " + box + " violations=" + std::to_string(c.expected_violations);
}

} // namespace sival::oracle
