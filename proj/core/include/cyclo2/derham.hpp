#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "cyclo2/f2linalg.hpp"
#include "cyclo2/hochschild.hpp"

namespace cyclo2 {

/* m dx_{i1}...dx_{in}: basis monomial id and the set {i1 < ... < in} as a bit mask */
struct FormTerm {
    int mono = 0;
    uint32_t dx = 0;
    auto operator<=>(const FormTerm&) const = default;
};

/* F2 combination of form terms, sorted, no repeats; not reduced modulo relations */
using Form = std::vector<FormTerm>;

Form form_normalize(std::vector<FormTerm> terms);
void form_add(Form& a, const Form& b);
inline int form_degree(uint32_t dx) { return __builtin_popcount(dx); }

class DeRham;

/* Omega^n in one grade: candidate terms modulo m d(r) dx_J */
class OmegaSpace {
public:
    OmegaSpace(const DeRham& R, int n, Grade g);

    int degree() const { return n_; }
    const Grade& grade() const { return grade_; }
    std::size_t dim() const { return free_.size(); }
    const std::vector<FormTerm>& candidates() const { return terms_; }
    /* vector over the candidates, unreduced */
    BitVec raw(const Form& f) const;
    /* coordinates in the complement basis */
    BitVec coordinates(const Form& f) const;
    bool is_zero(const Form& f) const { return !coordinates(f).any(); }
    Form basis_form(std::size_t i) const { return {terms_[free_[i]]}; }
    Form form_of(const BitVec& coords) const;

private:
    const DeRham& R_;
    int n_;
    Grade grade_;
    std::vector<FormTerm> terms_;
    std::map<FormTerm, std::size_t> index_;
    Echelon rel_;
    std::vector<std::size_t> free_;
};

struct DeRhamCohomology {
    int n = 0;
    Grade grade;
    std::shared_ptr<const OmegaSpace> space;
    SubspaceBasis cycles;
    SubspaceBasis boundaries;
    QuotientCoords quotient;

    std::size_t dim() const { return quotient.dim(); }
    /* throws std::invalid_argument when f is not closed */
    BitVec coordinates(const Form& f) const;
    Form representative(std::size_t i) const;
};

class DeRham {
public:
    explicit DeRham(const Algebra& A);
    const Algebra& algebra() const { return A_; }

    Grade grade(const FormTerm& t) const;
    /* all candidate terms of form degree n in grade g, sorted */
    std::vector<FormTerm> terms(int n, const Grade& g) const;
    /* relation generators m d(r) dx_J of degree n in grade g */
    std::vector<Form> relations(int n, const Grade& g) const;

    Form of_element(const Element& a) const;
    Form d_of(const Element& a) const;
    Form dx(std::size_t gen) const;
    Form d(const Form& f) const;
    Form multiply(const Form& a, const Form& b) const;
    /* a -> a^2, da -> a da, extended multiplicatively */
    Form cartier(const Form& f) const;
    /* sum over S(n) of sigma.m[x_i1|...|x_in], extended linearly */
    Chain antisymmetrize(const Hochschild& H, const Form& f) const;

    std::shared_ptr<const OmegaSpace> space(int n, const Grade& g) const;
    /* matrix of d from space(n, g) to space(n+1, g) in complement coordinates */
    F2Matrix d_matrix(int n, const Grade& g) const;
    DeRhamCohomology cohomology(int n, const Grade& g) const;
    /* kernel of d in space(n, g), in complement coordinates */
    SubspaceBasis closed_forms(int n, const Grade& g) const;

    std::string format(const Form& f) const;

private:
    const Algebra& A_;
    std::vector<Grade> gen_grade_;
    /* d(r) for each Groebner basis element, with its grade */
    std::vector<std::pair<Form, Grade>> dr_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Grade>, std::shared_ptr<const OmegaSpace>> cache_;
};

}  // namespace cyclo2
