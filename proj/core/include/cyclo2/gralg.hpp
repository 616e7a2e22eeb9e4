#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclo2 {

/* exponent vector over the generators */
using Mono = std::vector<uint16_t>;
/* F2 polynomial: distinct monomials sorted descending in the monomial order */
using Poly = std::vector<Mono>;
/* F2 combination of basis monomial ids, sorted ascending, no repeats */
using Element = std::vector<int>;
/* splitting key for degreewise computations; see Algebra::split_mode() */
using Grade = std::vector<int>;

struct Generator {
    std::string name;
    int degree = 0;
    int augmentation = 0;
    bool augmentation_declared = false;
};

enum class GradingMode { graded, ungraded };

/*
 * How towers and quotient spaces are split into finite pieces.
 *  multidegree: all relations are monomials, so the exponent vector is a grading
 *  weight:      graded, non-monomial relations; key is the internal degree
 *  trivial:     ungraded with non-monomial relations; a single piece
 */
enum class SplitMode { multidegree, weight, trivial };

struct AlgebraPresentation {
    std::vector<Generator> generators;
    std::vector<Poly> relations;
    GradingMode mode = GradingMode::graded;
};

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* degrevlex on total exponent degree: returns <0, 0, >0 */
int compare_mono(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
unsigned total_degree(const Mono& m);
/* xor-add b into a, keeping the descending order */
void poly_add(Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_normalize(std::vector<Mono> terms);
std::vector<Poly> groebner_basis(std::vector<Poly> gens);

class Algebra {
public:
    explicit Algebra(AlgebraPresentation p);

    const AlgebraPresentation& presentation() const { return pres_; }
    std::size_t num_generators() const { return pres_.generators.size(); }
    const std::vector<Poly>& groebner() const { return gb_; }
    bool graded() const { return pres_.mode == GradingMode::graded; }
    SplitMode split_mode() const { return split_; }
    /* false when the default augmentation does not kill the relations (e.g. F4) */
    bool supplemented() const { return supplemented_; }

    Poly normal_form(const Poly& p) const;
    bool is_standard(const Mono& m) const;
    unsigned internal_degree(const Mono& m) const;
    std::vector<Mono> degree_basis(int d) const;
    int augment(const Poly& p) const;

    /* Build ids and product tables for all standard monomials of weight <= w.
       Not thread-safe; everything below is read-only afterwards. */
    void prepare(int max_weight);
    int prepared_weight() const { return prepared_; }

    int unit() const { return 0; }
    std::size_t num_basis() const { return monos_.size(); }
    const Mono& mono(int id) const { return monos_[std::size_t(id)]; }
    int id_of(const Mono& m) const;
    const Grade& grade(int id) const { return grades_[std::size_t(id)]; }
    int weight(int id) const { return weights_[std::size_t(id)]; }
    int degree(int id) const { return int(internal_degree(monos_[std::size_t(id)])); }
    int generator_id(std::size_t g) const;

    const Element& mul(int i, int j) const;
    Element multiply(const Element& a, const Element& b) const;
    Element to_element(const Poly& p) const;
    Poly to_poly(const Element& e) const;
    int augment(const Element& e) const;
    /* d(mono)/d(generator g) as an element */
    Element derivative(int id, std::size_t g) const;

    /* grade helpers */
    Grade grade_of(const Mono& m) const;
    Grade zero_grade() const;
    Grade grade_add(const Grade& a, const Grade& b) const;
    Grade grade_sub(const Grade& a, const Grade& b) const;
    Grade grade_scale(const Grade& a, int k) const;
    bool grade_nonneg(const Grade& a) const;
    int grade_weight(const Grade& g) const;
    std::vector<Grade> grades_of_weight(int w) const;
    /* longest possible bar word in this grade; -1 when unbounded */
    int max_bars(const Grade& g) const;
    const std::vector<int>& ids_of_grade(const Grade& g) const;
    const std::map<Grade, std::vector<int>>& grade_table() const { return by_grade_; }
    int split_weight(std::size_t g) const;

    std::string format(const Mono& m) const;
    std::string format_id(int id) const { return format(mono(id)); }
    std::string format(const Element& e) const;

private:
    void validate();
    void enumerate_standard(int max_weight, std::vector<Mono>& out) const;

    AlgebraPresentation pres_;
    std::vector<Poly> gb_;
    SplitMode split_ = SplitMode::weight;
    bool supplemented_ = true;
    int prepared_ = -1;
    std::vector<Mono> monos_;
    std::map<Mono, int> index_;
    std::vector<Grade> grades_;
    std::vector<int> weights_;
    std::map<Grade, std::vector<int>> by_grade_;
    std::vector<std::vector<Element>> table_;
};

}  // namespace cyclo2
