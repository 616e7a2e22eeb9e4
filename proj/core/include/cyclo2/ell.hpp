#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "cyclo2/derham.hpp"
#include "cyclo2/f2linalg.hpp"
#include "cyclo2/gralg.hpp"

namespace cyclo2 {

/*
 *  ell        phi, q, delta, u
 *  ell_tilde  ell / (delta)
 *  script_L   ell / (u)
 *  ell_plus   ell-module on gamma(a), v^i
 *  ell_per    ell_tilde with u inverted
 */
enum class Flavor { ell, ell_tilde, script_L, ell_plus, ell_per };
const char* flavor_name(Flavor f);

enum class Marker { none, gamma, v };

/* u^j prod phi(a) prod q(b) prod delta(c) [gamma(e) | v^i]; arguments are non-unit basis ids */
struct EllMonomial {
    int u = 0;
    std::vector<int> phi;
    std::vector<int> q;
    std::vector<int> delta;
    Marker marker = Marker::none;
    int mark = 0;
    auto operator<=>(const EllMonomial&) const = default;
};

/* F2 combination, sorted, no repeats */
using EllPoly = std::vector<EllMonomial>;

EllPoly ell_normalize(std::vector<EllMonomial> terms);
void ell_add(EllPoly& a, const EllPoly& b);

class Ell;

/* one bidegree of a flavor: candidate monomials modulo the spanned relation instances */
class EllSpace {
public:
    EllSpace(const Ell& L, Flavor f, int n, Grade g, int cap);

    Flavor flavor() const { return flavor_; }
    int degree() const { return n_; }
    const Grade& grade() const { return grade_; }
    /* bound on the number of phi factors; -1 when the grade bounds everything */
    int cap() const { return cap_; }
    bool stable() const { return stable_; }
    std::size_t dim() const { return free_.size(); }
    std::size_t monomial_count() const { return monos_.size(); }
    std::size_t relation_rank() const { return rel_.rank(); }
    const std::vector<EllMonomial>& monomials() const { return monos_; }
    const std::vector<BitVec>& relation_rows() const { return rel_.rows(); }

    bool covers(const EllPoly& p) const;
    /* throws std::logic_error for monomials outside the candidate list */
    BitVec raw(const EllPoly& p) const;
    BitVec coordinates(const EllPoly& p) const;
    bool is_zero(const EllPoly& p) const { return !coordinates(p).any(); }
    EllPoly basis_element(std::size_t i) const { return {monos_[free_[i]]}; }
    EllPoly element_of(const BitVec& coords) const;
    EllPoly poly_of_raw(const BitVec& v) const;

private:
    friend class Ell;
    const Ell& L_;
    Flavor flavor_;
    int n_;
    Grade grade_;
    int cap_;
    bool stable_ = true;
    std::vector<EllMonomial> monos_;
    std::map<EllMonomial, std::size_t> index_;
    Echelon rel_;
    std::vector<std::size_t> free_;
};

/* element of Omega*[u]: u-exponent -> form */
using UForm = std::map<int, Form>;

class Ell {
public:
    Ell(const Algebra& A, const DeRham& R);
    const Algebra& algebra() const { return A_; }
    const DeRham& derham() const { return R_; }

    /* generators with arbitrary arguments, reduced by the additivity rules */
    EllPoly phi(const Element& a) const;
    EllPoly q(const Element& a) const;
    EllPoly delta(const Element& a) const;
    EllPoly gamma(const Element& a) const;
    EllPoly u_pow(int j) const;
    EllPoly v(int i) const;
    EllPoly one() const { return u_pow(0); }

    /* product in the ambient monomial algebra (or module) of a flavor */
    EllPoly mul(Flavor f, const EllPoly& a, const EllPoly& b) const;
    /* apply the built-in rules of a flavor to one monomial */
    EllPoly reduce(Flavor f, EllMonomial m) const;

    int hom(const EllMonomial& m) const;
    Grade grade(const EllMonomial& m) const;
    int weight(const EllMonomial& m) const { return A_.grade_weight(grade(m)); }

    std::vector<EllMonomial> monomials(Flavor f, int n, const Grade& g, int cap) const;
    struct Instance {
        EllPoly poly;
        int hom = 0;
        Grade grade;
        /* involves gamma or v: multiplied by ring monomials only */
        bool module = false;
        std::string label;
    };
    /* relation instances with basis arguments whose grade fits under g */
    const std::vector<Instance>& instances(Flavor f, const Grade& g) const;

    /* cached; in the trivial split mode the phi cap is raised until two caps agree */
    std::shared_ptr<const EllSpace> space(Flavor f, int n, const Grade& g) const;
    std::shared_ptr<const EllSpace> space_capped(Flavor f, int n, const Grade& g, int cap) const;

    /* structural maps */
    Form map_r(const EllPoly& x) const;
    EllPoly map_tau(const Form& w) const;
    EllPoly map_I(const Form& w) const;
    Form map_D(const EllPoly& x) const;
    EllPoly map_iota(const EllPoly& x) const;
    EllPoly map_S(const EllPoly& x) const;
    EllPoly map_boundary(const EllPoly& x) const;
    EllPoly times_u(Flavor f, const EllPoly& x) const;

    UForm star(const UForm& a, const UForm& b) const;
    UForm f_bar(const EllPoly& x) const;
    EllPoly s_bar(const UForm& w) const;

    std::string format(const EllMonomial& m) const;
    std::string format(const EllPoly& p) const;

private:
    std::vector<int> nonunit_ids_below(const Grade& g) const;

    const Algebra& A_;
    const DeRham& R_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, Grade, int>, std::shared_ptr<const EllSpace>> cache_;
    mutable std::map<std::pair<int, Grade>, std::shared_ptr<const std::vector<Instance>>> inst_cache_;
};

/* matrix of a linear map between two spaces in complement coordinates */
F2Matrix ell_matrix(const EllSpace& src, const EllSpace& tgt, const std::function<EllPoly(const EllPoly&)>& f);

/* Omega^{n+2j} in grade g/2 for all j >= 0: the bidegree (n, g) of Omega*[u] */
struct OmegaU {
    std::vector<std::pair<int, std::shared_ptr<const OmegaSpace>>> parts;
    std::size_t dim() const;
    BitVec coordinates(const UForm& w) const;
    UForm element(std::size_t i) const;
};
OmegaU omega_u(const DeRham& R, int n, const Grade& g);

/* dims of u^i ell / u^(i+1) ell in bidegree (n, g) for i = 0..imax */
std::vector<std::size_t> gr_ell(const Ell& L, int n, const Grade& g, int imax);

}  // namespace cyclo2
