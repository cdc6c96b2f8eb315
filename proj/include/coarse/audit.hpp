#pragma once
#include <optional>
#include <string>
#include <vector>

#include "coarse/combing.hpp"

namespace coarse {

struct Witness {
    std::string kind;  // step | fellow | proper | coherent | expanding | gromov
    std::vector<PointId> points;
    std::vector<int> stages;
    Dist dist = 0;
};

// Re-evaluate a witness distance against the combing table / space.
Dist eval_witness(const Combing& c, const Witness& w);

struct ExpCell {
    Dist r;
    int n;
    Dist rho;
    Dist f;
};

struct AuditReport {
    std::string property;  // Controlled | Proper | Coherent | Expanding
    std::string verdict;   // SupportedAtScale | RefutedAtScale | Inconclusive
    Dist collar_excluded = 0;
    std::string note;

    std::vector<std::pair<int, Dist>> step_table;     // controlled: n -> max step
    std::vector<std::pair<Dist, Dist>> fellow_table;  // controlled: r -> fellow constant
    std::vector<std::pair<int, Dist>> m_table;        // proper: n -> m(n)
    std::vector<std::pair<Dist, Dist>> coh_table;     // coherent: rho -> coh(rho)
    std::vector<ExpCell> f_table;                     // expanding

    std::vector<Witness> witnesses;
};

AuditReport audit_controlled(const Combing& c, std::vector<Dist> fellow_radii = {},
                             std::optional<Dist> collar = {});
AuditReport audit_proper(const Combing& c, Dist k_radius, std::optional<Dist> collar = {});
AuditReport audit_coherent(const Combing& c, std::optional<Dist> collar = {});
AuditReport audit_expanding(const Combing& c, const std::vector<Dist>& r_list,
                            const std::vector<int>& n_list, std::optional<Dist> collar = {},
                            std::optional<Dist> tolerance = {});

struct QuasiGeodesicParams {
    bool found = false;
    std::int64_t lambda_num = 1, lambda_den = 1;
    Dist k = 0;
    std::vector<Witness> violations;  // populated when !found
};

QuasiGeodesicParams audit_quasi_geodesic(const Combing& c);

struct GromovFellowReport {
    bool pass = false;
    Dist delta = 0;
    std::size_t pairs_checked = 0;
    std::vector<Witness> failures;  // gaps > 2*delta at stages n <= (x|y)-delta
};

GromovFellowReport check_gromov_fellow(const Combing& c, Dist delta, std::size_t sample_budget,
                                       std::uint64_t seed = 12345);

}  // namespace coarse
