#pragma once

#include <string>
#include <vector>

#include "kadv/gadgets.hpp"
#include "kadv/kopt.hpp"
#include "kadv/maxcut.hpp"

namespace kadv {

struct CheckResult {
    std::string id;
    std::string anchor;  // which structural claim the check exercises
    bool pass;
    std::string witness;  // populated on failure
    double seconds;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string summary() const;
};

// Fine-grained gadget checks; empty string = pass, witness otherwise. They
// take the gadget as data so tests can run them against mutated copies.
std::string check_standard_catalog(const Gadget& g, size_t expected);
std::string check_path_weight_formula(const Gadget& g);
std::string check_star_weight_formula(const Gadget& g);
std::string check_involved_edge_table(const Gadget& g);
std::string check_nonstandard_side_parity(const Gadget& g);
std::string check_star_change_classification(const Gadget& g);
std::string check_star4_table(const Gadget& g, const Rat& eps_tilde);
std::string check_star4_pi_chain(const Gadget& g);
std::string check_xor_gadget(const Gadget& g, long q);

Report verify_gadget_lemmas();

// k is "3", "4", "5", ... or "2.5".
Report verify_reduction(long n, long p, const std::string& k);

struct ScalingReport {
    Report report;
    std::string csv;  // n,pivot,flip_len,kopt_len
};

// Flip runs for each n in n_range under every pivot; when k is nonempty,
// matching local-search runs on the reduction with per-step standardness.
ScalingReport verify_scaling(const std::vector<long>& n_range, long p, const std::string& k,
                             const std::vector<PivotRule>& pivots);

}  // namespace kadv
