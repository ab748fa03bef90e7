#include "supershape/genome.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "supershape/error.hpp"

namespace supershape {

std::optional<std::size_t> gene_index(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kGeneCount; ++i)
        if (kGeneNames[i] == name) return i;
    return std::nullopt;
}

GeneBounds default_gene_bounds() {
    constexpr double pi = std::numbers::pi;
    const GeneRange m{0.0, 20.0}, ab{0.1, 5.0}, n1{0.1, 20.0}, n23{0.0, 20.0}, angle{-pi, pi};
    return {m, ab, ab, n1, n23, n23, m, ab, ab, n1, n23, n23, angle, angle, angle};
}

void validate_bounds(const GeneBounds& bounds) {
    for (std::size_t i = 0; i < kGeneCount; ++i) {
        const auto& r = bounds[i];
        const std::string name(kGeneNames[i]);
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
            throw Error(ErrorKind::invalid_config, "bounds for " + name + " must be finite with lo <= hi");
        if (i < 12) {
            const std::size_t k = i % 6;
            if ((k == 1 || k == 2 || k == 3) && !(r.lo > 0.0))
                throw Error(ErrorKind::invalid_config, "lower bound for " + name + " must be > 0");
            if ((k == 4 || k == 5) && r.lo < 0.0)
                throw Error(ErrorKind::invalid_config, "lower bound for " + name + " must be >= 0");
        }
    }
}

Genome::Genome(const SuperformulaParams& r1, const SuperformulaParams& r2, double elevation,
               double azimuth, double rotation)
    : genes_{r1.m, r1.a, r1.b, r1.n1, r1.n2, r1.n3, r2.m, r2.a, r2.b, r2.n1, r2.n2, r2.n3,
             elevation, azimuth, rotation} {}

bool Genome::within(const GeneBounds& bounds) const noexcept {
    for (std::size_t i = 0; i < kGeneCount; ++i)
        if (!bounds[i].contains(genes_[i])) return false;
    return true;
}

void Genome::check_within(const GeneBounds& bounds) const {
    for (std::size_t i = 0; i < kGeneCount; ++i) {
        if (bounds[i].contains(genes_[i])) continue;
        std::ostringstream msg;
        msg << "gene " << kGeneNames[i] << " = " << genes_[i] << " outside [" << bounds[i].lo << ", "
            << bounds[i].hi << "]";
        throw Error(ErrorKind::invalid_genome, msg.str());
    }
}

Genome sphere_genome() {
    return {SuperformulaParams::sphere(), SuperformulaParams::sphere(), 0.0, 0.0, 0.0};
}

Genome parse_genome(std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view field = text.substr(pos, comma - pos);
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
        if (!field.empty() && field.front() == '+') field.remove_prefix(1);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || end != field.data() + field.size() || !std::isfinite(v))
            throw Error(ErrorKind::invalid_genome, "cannot parse gene value '" + std::string(field) + "'");
        values.push_back(v);
        pos = comma + 1;
    }
    if (values.size() != kGeneCount)
        throw Error(ErrorKind::invalid_genome, "genome needs exactly 15 values, got " + std::to_string(values.size()));
    std::array<double, kGeneCount> genes{};
    std::copy(values.begin(), values.end(), genes.begin());
    return Genome(genes);
}

std::string format_genome(const Genome& genome) {
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < kGeneCount; ++i) {
        const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, genome[i]);
        (void)ec;
        if (i) out += ',';
        out.append(buf, end);
    }
    return out;
}

}  // namespace supershape
