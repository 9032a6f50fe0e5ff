#include "tanglekit/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tanglekit/bipartite.hpp"
#include "tanglekit/invariants.hpp"

namespace tk {

namespace {

std::vector<int> complement_of(const std::vector<int>& block, int n) {
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
        if (std::find(block.begin(), block.end(), i) == block.end()) rest.push_back(i);
    }
    return rest;
}

double block_purity(const PureState& psi, const std::vector<int>& block) {
    return purity(partial_trace(dm(psi), block));
}

void require_all_qubits(const Dims& dims) {
    for (int d : dims) {
        if (d != 2) throw std::invalid_argument("qubit parties required");
    }
}

}  // namespace

Bipartition Bipartition::canonical(std::vector<int> block, int nparties) {
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    if (block.empty() || static_cast<int>(block.size()) >= nparties) {
        throw std::invalid_argument("bipartition block must be a nonempty proper subset");
    }
    if (block.front() < 0 || block.back() >= nparties) {
        throw std::invalid_argument("bipartition block index out of range");
    }
    std::vector<int> rest = complement_of(block, nparties);
    if (rest < block) block.swap(rest);
    return Bipartition{std::move(block)};
}

std::vector<Bipartition> all_bipartitions(int nparties) {
    if (nparties < 2) throw std::invalid_argument("need at least two parties");
    if (nparties > 12) throw std::invalid_argument("bipartition enumeration capped at 12 parties");
    std::vector<Bipartition> out;
    // party 0 always in the block: each cut enumerated once
    const unsigned top = 1u << (nparties - 1);
    for (unsigned mask = 0; mask + 1 < top; ++mask) {
        std::vector<int> block{0};
        for (int q = 1; q < nparties; ++q) {
            if (mask & (1u << (q - 1))) block.push_back(q);
        }
        out.push_back(Bipartition::canonical(std::move(block), nparties));
    }
    return out;
}

double one_tangle(const PureState& psi, int j) {
    if (j < 0 || j >= static_cast<int>(psi.dims.size())) {
        throw std::invalid_argument("party index out of range");
    }
    return std::max(0.0, 2.0 * (1.0 - block_purity(psi, {j})));
}

double global_entanglement(const PureState& psi) {
    const int n = static_cast<int>(psi.dims.size());
    double q = 0.0;
    for (int j = 0; j < n; ++j) q += one_tangle(psi, j);
    return q / n;
}

double pairwise_concurrence(const DensityMatrix& rho, int j, int k) {
    const int n = static_cast<int>(rho.dims.size());
    if (j < 0 || k < 0 || j >= n || k >= n || j == k) {
        throw std::invalid_argument("party indices out of range");
    }
    if (rho.dims[j] != 2 || rho.dims[k] != 2) {
        throw std::invalid_argument("pairwise concurrence needs qubit parties");
    }
    return wootters_concurrence(partial_trace(rho, {std::min(j, k), std::max(j, k)}));
}

double pairwise_concurrence(const PureState& psi, int j, int k) {
    return pairwise_concurrence(dm(psi), j, k);
}

std::vector<MonogamyAudit> monogamy_audit(const PureState& psi, int j) {
    require_all_qubits(psi.dims);
    const int n = static_cast<int>(psi.dims.size());
    if (j < 0 || j >= n) throw std::invalid_argument("party index out of range");

    std::vector<MonogamyAudit> out;
    const double tau_j = one_tangle(psi, j);

    double sum_c2 = 0.0;
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const double c = pairwise_concurrence(psi, j, k);
        sum_c2 += c * c;
    }
    out.push_back({"one-tangle vs pairwise concurrences", tau_j, sum_c2, tau_j - sum_c2});

    if (n == 3) {
        const double res = residual_tangle(psi);
        out.push_back({"three-qubit equality (residual = tangle)",
                       tau_j, sum_c2 + res, tau_j - sum_c2 - res});
    }

    // negativity version: N_{j|rest}^2 >= sum_k N(rho_{jk})^2
    {
        const DensityMatrix full = dm(psi);
        const double nj = negativity(full, j);
        double sum_n2 = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const DensityMatrix red =
                partial_trace(full, {std::min(j, k), std::max(j, k)});
            const double njk = negativity(red, j < k ? 0 : 1);
            sum_n2 += njk * njk;
        }
        out.push_back({"negativity monogamy", nj * nj, sum_n2, nj * nj - sum_n2});
    }

    if (n == 4) {
        // average one-tangle / average two-block tangle identity through H
        double tau1 = 0.0;
        for (int q = 0; q < 4; ++q) tau1 += one_tangle(psi, q);
        tau1 /= 4.0;
        double tau2 = 0.0;
        for (int q = 1; q < 4; ++q) {
            tau2 += 2.0 * (1.0 - block_purity(psi, {0, q}));
        }
        tau2 /= 3.0;
        const double habs = std::abs(comb_expectation(psi, {2, 2, 2, 2}));
        const double rhs = (4.0 * tau1 - habs * habs) / 3.0;
        out.push_back({"four-qubit degree-2 identity", tau2, rhs, tau2 - rhs});
    }
    return out;
}

double gme_concurrence_pure(const PureState& psi) {
    const int n = static_cast<int>(psi.dims.size());
    if (n < 3) throw std::invalid_argument("need at least three parties");
    double best = std::numeric_limits<double>::infinity();
    for (const Bipartition& cut : all_bipartitions(n)) {
        const double c2 = 2.0 * (1.0 - block_purity(psi, cut.block));
        best = std::min(best, std::sqrt(std::max(0.0, c2)));
    }
    return best;
}

BoundValue gme_concurrence_bound(const DensityMatrix& rho,
                                 const std::vector<GmePair>& pairs) {
    const int n = static_cast<int>(rho.dims.size());
    const std::size_t D = static_cast<std::size_t>(rho.dim());
    if (pairs.empty()) throw std::invalid_argument("empty index-pair set");
    for (const GmePair& p : pairs) {
        if (p.m >= D || p.mt >= D || p.m == p.mt) {
            throw std::invalid_argument("malformed index pair");
        }
    }

    // digits of a flat index, party-major
    auto digits = [&](std::size_t flat) {
        std::vector<int> d(static_cast<std::size_t>(n));
        for (int q = n - 1; q >= 0; --q) {
            d[static_cast<std::size_t>(q)] = static_cast<int>(flat % rho.dims[q]);
            flat /= static_cast<std::size_t>(rho.dims[q]);
        }
        return d;
    };
    auto flat_of = [&](const std::vector<int>& d) {
        std::size_t f = 0;
        for (int q = 0; q < n; ++q) f = f * rho.dims[q] + static_cast<std::size_t>(d[q]);
        return f;
    };

    double offdiag = 0.0;
    for (const GmePair& p : pairs) {
        offdiag += std::abs(rho.m(static_cast<Eigen::Index>(p.m),
                                  static_cast<Eigen::Index>(p.mt)));
    }

    // split each pair under each cut; count every distinct diagonal term at
    // most as often as a single bipartition produces it
    const std::vector<Bipartition> cuts = all_bipartitions(n);
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, int>> seen;
    for (std::size_t ci = 0; ci < cuts.size(); ++ci) {
        for (const GmePair& p : pairs) {
            const std::vector<int> dm_ = digits(p.m);
            const std::vector<int> dmt = digits(p.mt);
            std::vector<int> a = dmt, b = dm_;
            for (int q : cuts[ci].block) {
                a[static_cast<std::size_t>(q)] = dm_[static_cast<std::size_t>(q)];
                b[static_cast<std::size_t>(q)] = dmt[static_cast<std::size_t>(q)];
            }
            std::size_t fa = flat_of(a), fb = flat_of(b);
            if (fa > fb) std::swap(fa, fb);
            seen[{fa, fb}][ci] += 1;
        }
    }
    double diag = 0.0;
    for (const auto& [term, per_cut] : seen) {
        int count = 0;
        for (const auto& [ci, c] : per_cut) count = std::max(count, c);
        const double da = rho.m(static_cast<Eigen::Index>(term.first),
                                static_cast<Eigen::Index>(term.first)).real();
        const double db = rho.m(static_cast<Eigen::Index>(term.second),
                                static_cast<Eigen::Index>(term.second)).real();
        diag += count * std::sqrt(std::max(0.0, da) * std::max(0.0, db));
    }
    return BoundValue{std::max(0.0, 2.0 * (offdiag - diag)), BoundKind::Lower};
}

std::vector<GmePair> gme_ghz_pairs(int nqubits) {
    if (nqubits < 2) throw std::invalid_argument("need at least two qubits");
    return {GmePair{0, (std::size_t{1} << nqubits) - 1}};
}

std::vector<GmePair> gme_dicke_pairs(int nqubits) {
    if (nqubits < 2) throw std::invalid_argument("need at least two qubits");
    std::vector<GmePair> out;
    for (int j = 0; j < nqubits; ++j) {
        for (int k = j + 1; k < nqubits; ++k) {
            out.push_back(GmePair{std::size_t{1} << (nqubits - 1 - j),
                                  std::size_t{1} << (nqubits - 1 - k)});
        }
    }
    return out;
}

double min_bipartition_negativity(const DensityMatrix& rho) {
    const int n = static_cast<int>(rho.dims.size());
    if (n < 3) throw std::invalid_argument("need at least three parties");
    double best = std::numeric_limits<double>::infinity();
    for (const Bipartition& cut : all_bipartitions(n)) {
        best = std::min(best, negativity_block(rho, cut.block));
    }
    return best;
}

PureState telescope(const PureState& psi3) {
    if (psi3.dims != Dims{2, 2, 2}) {
        throw std::invalid_argument("telescoping is defined for three qubits");
    }
    Vec out = Vec::Zero(16);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                out[(j << 3) | (k << 2) | (l << 1) | l] = psi3.a[(j << 2) | (k << 1) | l];
            }
    return PureState(std::move(out), Dims{2, 2, 2, 2});
}

}  // namespace tk
