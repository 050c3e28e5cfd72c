#include "tropmetz/harness.hpp"

#include "tropmetz/error.hpp"
#include "tropmetz/sampling.hpp"

#include <algorithm>
#include <chrono>

#include <omp.h>

namespace tropmetz {

void VerificationReport::merge(const VerificationReport& other) {
    samples += other.samples;
    forward_total += other.forward_total;
    forward_agree += other.forward_agree;
    backward_total += other.backward_total;
    backward_agree += other.backward_agree;
    if (other.counterexample && (!counterexample || other.counterexample->index < counterexample->index)) {
        counterexample = other.counterexample;
    }
}

RationalVector verification_point(const EncodedOperator& op, const SampleConfig& config, std::size_t index) {
    auto rng = stream_rng(config.seed, index);
    auto x = sample_point(rng, op.dimension(), config.box, config.denom);
    if (config.mix_subfixed && index % 2 == 1) {
        for (int round = 0; round < 4; ++round) {
            const auto f = op.eval(x);
            bool below = true;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (f[i] < x[i]) {
                    x[i] = f[i];
                    below = false;
                }
            }
            if (below) break;
        }
    }
    return x;
}

namespace {

void check_sample(const EncodedOperator& op, const ProjectedPencil& pp, const SampleConfig& config, std::size_t index,
                  VerificationReport& report) {
    const auto x = verification_point(op, config, index);
    const bool sub = op.subfixed(x);
    const bool member = projected_member(pp, to_trop(x));
    ++report.samples;
    if (sub) {
        ++report.forward_total;
        if (member) ++report.forward_agree;
    }
    if (member) {
        ++report.backward_total;
        if (sub) ++report.backward_agree;
    }
    if (sub != member && (!report.counterexample || index < report.counterexample->index)) {
        report.counterexample = Counterexample{index, x, sub, member};
    }
}

void check_dims(const EncodedOperator& op, const ProjectedPencil& pp) {
    if (op.dimension() != pp.visible) throw Error(ErrorCode::DimensionMismatch, "pencil and operator differ in dimension");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

VerificationReport verify_projected(const EncodedOperator& op, const ProjectedPencil& pp, const SampleConfig& config) {
    check_dims(op, pp);
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    for (std::size_t i = 0; i < config.samples; ++i) check_sample(op, pp, config, i, report);
    report.seconds = seconds_since(start);
    return report;
}

VerificationReport verify_projected_parallel(const EncodedOperator& op, const ProjectedPencil& pp,
                                             const SampleConfig& config) {
    check_dims(op, pp);
    const auto start = std::chrono::steady_clock::now();
    const long long total = static_cast<long long>(config.samples);
    std::vector<VerificationReport> partial(static_cast<std::size_t>(omp_get_max_threads()));
    bool failed = false;
    std::string failure;
#pragma omp parallel
    {
        auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (long long i = 0; i < total; ++i) {
            try {
                check_sample(op, pp, config, static_cast<std::size_t>(i), mine);
            } catch (const std::exception& e) {
#pragma omp critical
                {
                    failed = true;
                    failure = e.what();
                }
            }
        }
    }
    if (failed) throw Error(ErrorCode::PreconditionViolated, "verification worker failed: " + failure);
    VerificationReport report;
    for (const auto& p : partial) report.merge(p);
    report.seconds = seconds_since(start);
    return report;
}

namespace {

SectionGrid section_layout(const EncodedOperator& op, const SectionConfig& config) {
    if (sgn(config.step) <= 0) throw Error(ErrorCode::Malformed, "section step must be positive");
    SectionGrid grid;
    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < op.dimension(); ++k) {
        if (!config.fixed.count(k)) free.push_back(k);
    }
    for (const auto& [k, v] : config.fixed) {
        if (k >= op.dimension()) throw Error(ErrorCode::Malformed, "fixed coordinate out of range");
    }
    if (free.size() > 2) throw Error(ErrorCode::Malformed, "a section needs at most two free coordinates");
    if (!free.empty()) grid.x_axis = free[0];
    if (free.size() > 1) grid.y_axis = free[1];

    std::vector<Rational> axis;
    for (Rational v = config.lo; v <= config.hi; v += config.step) axis.push_back(v);
    if (axis.empty()) axis.push_back(config.lo);
    grid.xs = grid.x_axis ? axis : std::vector<Rational>{Rational(0)};
    grid.ys = grid.y_axis ? std::vector<Rational>(axis.rbegin(), axis.rend()) : std::vector<Rational>{Rational(0)};
    grid.cells.assign(grid.ys.size(), std::vector<char>(grid.xs.size(), 0));
    return grid;
}

void fill_row(const EncodedOperator& op, const SectionConfig& config, SectionGrid& grid, std::size_t r) {
    RationalVector x(op.dimension());
    for (const auto& [k, v] : config.fixed) x[k] = v;
    if (grid.y_axis) x[*grid.y_axis] = grid.ys[r];
    for (std::size_t c = 0; c < grid.xs.size(); ++c) {
        if (grid.x_axis) x[*grid.x_axis] = grid.xs[c];
        grid.cells[r][c] = op.subfixed(x) ? 1 : 0;
    }
}

}  // namespace

SectionGrid section(const EncodedOperator& op, const SectionConfig& config) {
    auto grid = section_layout(op, config);
    for (std::size_t r = 0; r < grid.ys.size(); ++r) fill_row(op, config, grid, r);
    return grid;
}

SectionGrid section_parallel(const EncodedOperator& op, const SectionConfig& config) {
    auto grid = section_layout(op, config);
    const long long rows = static_cast<long long>(grid.ys.size());
#pragma omp parallel for schedule(dynamic)
    for (long long r = 0; r < rows; ++r) fill_row(op, config, grid, static_cast<std::size_t>(r));
    return grid;
}

std::string section_csv(const SectionGrid& grid) {
    std::string out = "y\\x";
    for (const auto& x : grid.xs) out += "," + (grid.x_axis ? pretty_rational(x) : std::string("*"));
    out += "\n";
    for (std::size_t r = 0; r < grid.ys.size(); ++r) {
        out += grid.y_axis ? pretty_rational(grid.ys[r]) : std::string("*");
        for (auto cell : grid.cells[r]) out += cell ? ",1" : ",0";
        out += "\n";
    }
    return out;
}

}  // namespace tropmetz
