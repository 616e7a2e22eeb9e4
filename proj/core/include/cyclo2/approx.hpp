#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclo2/cyclic.hpp"
#include "cyclo2/ell.hpp"

namespace cyclo2 {

/* ell flavor that approximates a theory: minus -> ell, plus -> ell_plus, per -> ell_per */
Flavor flavor_for(Theory t);

/* max(0, (d - n + 1) / 2) + 1: one more than the largest u-power that survives in bidegree (n, d) */
int tower_window(int n, int d);

struct ApproxRecord {
    int n = 0;
    Grade grade;
    int window = 0;
    std::size_t dim_source = 0;
    std::size_t dim_target = 0;
    std::size_t rank = 0;
    bool iso = false;
    /* target not stable in its window, or the source cap did not settle */
    bool truncated = false;
    std::size_t relation_rows = 0;
    /* relation rows whose image is not a boundary */
    std::size_t relation_failures = 0;
};

struct SquareResidual {
    std::string square;
    int n = 0;
    Grade grade;
    std::size_t checked = 0;
    /* number of differing matrix entries */
    std::size_t residual = 0;
    std::string offender;
};

struct ApproxReport {
    std::string algebra;
    Theory theory = Theory::minus;
    int min_n = 0, max_n = 0, max_d = 0;
    std::vector<ApproxRecord> records;
    std::vector<SquareResidual> squares;
    std::size_t product_samples = 0;
    std::size_t product_failures = 0;

    bool all_iso() const;
    std::vector<const ApproxRecord*> non_iso() const;
    std::vector<const ApproxRecord*> truncated() const;
    /* relations map to boundaries, squares commute, products agree */
    bool consistent() const;
};

class Approx {
public:
    Approx(const Hochschild& H, const Ell& L);
    const Hochschild& hochschild() const { return H_; }
    const Ell& ell() const { return L_; }

    /* generator images; each is checked to be a cycle */
    UChain image_delta(const Element& a) const;
    UChain image_q(const Element& a) const;
    UChain image_phi(const Element& a) const;
    UChain image_u(int j, Theory t) const;
    UChain image_gamma(const Element& a) const;
    UChain image_v(int i) const;

    /* chain-level image, monomial by monomial; exponents above max_exp dropped */
    UChain psi(Flavor f, const EllMonomial& m, int max_exp) const;
    UChain psi(Flavor f, const EllPoly& x, int max_exp) const;
    /* class coordinates of psi(x) in tgt; throws std::logic_error if the image is not a cycle */
    BitVec psi_class(Flavor f, const EllPoly& x, const HomologyPresentation& tgt) const;
    /* columns are psi of the basis of src */
    F2Matrix psi_matrix(const EllSpace& src, const HomologyPresentation& tgt) const;

    ApproxRecord compare(Theory t, int n, const Grade& g, int S) const;
    std::vector<SquareResidual> squares(Theory t, int n, const Grade& g, int S) const;
    /* sampled psi(xy) = psi(x) psi(y); for plus x runs over ell and y over ell_plus */
    std::pair<std::size_t, std::size_t> products(Theory t, int min_n, int max_n, int max_d, int samples,
                                                 uint64_t seed) const;

private:
    void require_cycle(const UChain& x, const char* what) const;

    const Hochschild& H_;
    const Ell& L_;
};

struct ApproxOptions {
    int min_n = -8;
    int max_n = 8;
    int max_d = 8;
    /* fixed window; -1 picks tower_window per bidegree */
    int window = -1;
    int samples = 100;
    uint64_t seed = 1;
    bool squares = true;
};

ApproxReport verify_approximation(const Approx& P, Theory t, const ApproxOptions& opt);

}  // namespace cyclo2
