#include "cyclo2/derham.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo2 {

Form form_normalize(std::vector<FormTerm> terms)
{
    std::sort(terms.begin(), terms.end());
    Form out;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i])
            ++j;
        if ((j - i) & 1)
            out.push_back(terms[i]);
        i = j;
    }
    return out;
}

void form_add(Form& a, const Form& b)
{
    std::vector<FormTerm> all = a;
    all.insert(all.end(), b.begin(), b.end());
    a = form_normalize(std::move(all));
}

DeRham::DeRham(const Algebra& A) : A_(A)
{
    for (std::size_t i = 0; i < A.num_generators(); ++i) {
        Mono m(A.num_generators(), 0);
        m[i] = 1;
        gen_grade_.push_back(A.grade_of(m));
    }
}

Grade DeRham::grade(const FormTerm& t) const
{
    Grade g = A_.grade(t.mono);
    for (std::size_t i = 0; i < gen_grade_.size(); ++i)
        if (t.dx >> i & 1u)
            g = A_.grade_add(g, gen_grade_[i]);
    return g;
}

namespace {

std::vector<uint32_t> masks_of_size(std::size_t ngen, int n)
{
    std::vector<uint32_t> out;
    if (n < 0 || std::size_t(n) > ngen)
        return out;
    for (uint32_t m = 0; m < (uint32_t(1) << ngen); ++m)
        if (form_degree(m) == n)
            out.push_back(m);
    return out;
}

}  // namespace

std::vector<FormTerm> DeRham::terms(int n, const Grade& g) const
{
    std::vector<FormTerm> out;
    for (uint32_t mask : masks_of_size(A_.num_generators(), n)) {
        Grade rest = g;
        for (std::size_t i = 0; i < gen_grade_.size(); ++i)
            if (mask >> i & 1u)
                rest = A_.grade_sub(rest, gen_grade_[i]);
        if (!A_.grade_nonneg(rest))
            continue;
        for (int id : A_.ids_of_grade(rest))
            out.push_back({id, mask});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Form> DeRham::relations(int n, const Grade& g) const
{
    std::vector<Form> out;
    const std::size_t ng = A_.num_generators();
    for (const auto& r : A_.groebner()) {
        Grade gr = A_.grade_of(r[0]);
        Form dr;
        for (std::size_t i = 0; i < ng; ++i) {
            std::vector<Mono> part;
            for (const auto& m : r)
                if (m[i] & 1) {
                    Mono c = m;
                    --c[i];
                    part.push_back(c);
                }
            if (part.empty())
                continue;
            Grade gc = A_.grade_sub(gr, gen_grade_[i]);
            if (!A_.grade_nonneg(A_.grade_sub(g, gc)))
                continue;
            for (int id : A_.to_element(A_.normal_form(part)))
                dr.push_back({id, uint32_t(1) << i});
        }
        dr = form_normalize(dr);
        if (dr.empty())
            continue;
        for (uint32_t mask : masks_of_size(ng, n - 1)) {
            Grade rest = A_.grade_sub(g, gr);
            for (std::size_t i = 0; i < ng; ++i)
                if (mask >> i & 1u)
                    rest = A_.grade_sub(rest, gen_grade_[i]);
            if (!A_.grade_nonneg(rest))
                continue;
            for (int id : A_.ids_of_grade(rest)) {
                Form f = multiply(multiply({{id, 0}}, dr), {{0, mask}});
                if (!f.empty())
                    out.push_back(std::move(f));
            }
        }
    }
    return out;
}

Form DeRham::of_element(const Element& a) const
{
    Form f;
    for (int id : a)
        f.push_back({id, 0});
    return f;
}

Form DeRham::d_of(const Element& a) const
{
    return d(of_element(a));
}

Form DeRham::dx(std::size_t gen) const
{
    return {{A_.unit(), uint32_t(1) << gen}};
}

Form DeRham::d(const Form& f) const
{
    std::vector<FormTerm> out;
    for (const auto& t : f)
        for (std::size_t i = 0; i < A_.num_generators(); ++i) {
            if (t.dx >> i & 1u)
                continue;
            for (int id : A_.derivative(t.mono, i))
                out.push_back({id, t.dx | uint32_t(1) << i});
        }
    return form_normalize(std::move(out));
}

Form DeRham::multiply(const Form& a, const Form& b) const
{
    std::vector<FormTerm> out;
    for (const auto& s : a)
        for (const auto& t : b) {
            if (s.dx & t.dx)
                continue;
            for (int id : A_.mul(s.mono, t.mono))
                out.push_back({id, s.dx | t.dx});
        }
    return form_normalize(std::move(out));
}

Form DeRham::cartier(const Form& f) const
{
    Form out;
    for (const auto& t : f) {
        Form acc = of_element(A_.mul(t.mono, t.mono));
        for (std::size_t i = 0; i < A_.num_generators(); ++i)
            if (t.dx >> i & 1u)
                acc = multiply(acc, {{A_.generator_id(i), uint32_t(1) << i}});
        form_add(out, acc);
    }
    return out;
}

Chain DeRham::antisymmetrize(const Hochschild& H, const Form& f) const
{
    Chain out;
    for (const auto& t : f) {
        std::vector<Element> bars;
        for (std::size_t i = 0; i < A_.num_generators(); ++i)
            if (t.dx >> i & 1u)
                bars.push_back({A_.generator_id(i)});
        chain_add(out, H.antisymmetrize({t.mono}, bars));
    }
    return out;
}

std::shared_ptr<const OmegaSpace> DeRham::space(int n, const Grade& g) const
{
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find({n, g});
        if (it != cache_.end())
            return it->second;
    }
    auto sp = std::make_shared<const OmegaSpace>(*this, n, g);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(std::make_pair(n, g), sp).first->second;
}

F2Matrix DeRham::d_matrix(int n, const Grade& g) const
{
    auto src = space(n, g);
    auto tgt = space(n + 1, g);
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < src->dim(); ++i)
        cols.push_back(tgt->coordinates(d(src->basis_form(i))));
    return F2Matrix::from_columns(tgt->dim(), cols);
}

SubspaceBasis DeRham::closed_forms(int n, const Grade& g) const
{
    return rank_kernel_image(d_matrix(n, g)).kernel;
}

DeRhamCohomology DeRham::cohomology(int n, const Grade& g) const
{
    DeRhamCohomology h;
    h.n = n;
    h.grade = g;
    h.space = space(n, g);
    h.cycles = closed_forms(n, g);
    if (n >= 1)
        h.boundaries = rank_kernel_image(d_matrix(n - 1, g)).image;
    else
        h.boundaries.ambient_dim = h.space->dim();
    h.quotient = QuotientCoords(h.cycles, h.boundaries);
    return h;
}

std::string DeRham::format(const Form& f) const
{
    if (f.empty())
        return "0";
    std::string s;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k)
            s += " + ";
        std::string t = f[k].mono == A_.unit() && f[k].dx ? "" : A_.format_id(f[k].mono);
        for (std::size_t i = 0; i < A_.num_generators(); ++i)
            if (f[k].dx >> i & 1u)
                t += (t.empty() ? "d" : " d") + A_.presentation().generators[i].name;
        s += t;
    }
    return s;
}

OmegaSpace::OmegaSpace(const DeRham& R, int n, Grade g) : R_(R), n_(n), grade_(std::move(g))
{
    terms_ = R.terms(n_, grade_);
    for (std::size_t i = 0; i < terms_.size(); ++i)
        index_.emplace(terms_[i], i);
    rel_ = Echelon(terms_.size());
    for (const auto& f : R.relations(n_, grade_))
        rel_.insert(raw(f));
    free_ = rel_.free_columns();
}

BitVec OmegaSpace::raw(const Form& f) const
{
    BitVec v(terms_.size());
    for (const auto& t : f) {
        auto it = index_.find(t);
        if (it == index_.end())
            throw std::logic_error("form term outside Omega^" + std::to_string(n_) + ": " + R_.format({t}));
        v.flip(it->second);
    }
    return v;
}

BitVec OmegaSpace::coordinates(const Form& f) const
{
    BitVec v = raw(f);
    rel_.reduce(v);
    BitVec c(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i)
        if (v.get(free_[i]))
            c.set(i);
    return c;
}

Form OmegaSpace::form_of(const BitVec& coords) const
{
    Form f;
    for (std::size_t i : coords.ones())
        f.push_back(terms_[free_[i]]);
    return form_normalize(f);
}

BitVec DeRhamCohomology::coordinates(const Form& f) const
{
    BitVec c = space->coordinates(f);
    if (!cycles.contains(c))
        throw std::invalid_argument("form is not closed");
    return quotient.coordinates(c);
}

Form DeRhamCohomology::representative(std::size_t i) const
{
    return space->form_of(quotient.representatives()[i]);
}

}  // namespace cyclo2
