#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>

#include "cyclo2/f2linalg.hpp"
#include "cyclo2/hochschild.hpp"

namespace cyclo2 {

/*
 * The complex sum_k u^k (x) C_{n+2k}(A) in one grade, with the exponent range
 *   hh: k = 0     minus: 0 <= k <= S     plus: k <= 0     per: k <= S
 * Terms pushed above S are dropped, which makes the window a quotient complex.
 */
class TowerSlice {
public:
    TowerSlice(const Hochschild& H, Theory t, int n, Grade g, int S);

    Theory theory() const { return theory_; }
    int degree() const { return n_; }
    const Grade& grade() const { return grade_; }
    int window() const { return S_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::pair<int, Word>>& basis() const { return basis_; }
    long index_of(int k, const Word& w) const;
    bool in_range(int k) const;

    /* coordinates of x; exponents outside the window are dropped, unknown words throw */
    BitVec vector_of(const UChain& x) const;
    UChain chain_of(const BitVec& v) const;
    /* (B+b) into degree n-1 as a matrix with dim() columns */
    F2Matrix differential(const TowerSlice& target) const;

private:
    const Hochschild& H_;
    Theory theory_;
    int n_;
    Grade grade_;
    int S_;
    std::vector<std::pair<int, Word>> basis_;
    std::unordered_map<Word, long, WordHash> index_;
};

/* lowest and highest exponent that can carry words in degree n and grade g; hi = -1 for plus when empty */
std::pair<int, int> exponent_bounds(const Algebra& A, Theory t, int n, const Grade& g, int S);
/* smallest window that leaves degrees n-1, n, n+1 untouched in grade g; -1 when unbounded */
int exact_window(const Algebra& A, int n, const Grade& g);

struct HomologyPresentation {
    Theory theory = Theory::hh;
    int n = 0;
    Grade grade;
    int S = 0;
    /* stable: S and S+1 give isomorphic answers (or the window is provably exact) */
    bool stable = true;
    std::shared_ptr<const TowerSlice> slice;
    SubspaceBasis cycles;
    Echelon boundaries;
    QuotientCoords quotient;

    std::size_t dim() const { return quotient.dim(); }
    bool is_cycle(const UChain& x) const;
    /* throws std::invalid_argument when x is not a cycle */
    BitVec coordinates(const UChain& x) const;
    bool is_boundary(const UChain& x) const;
    UChain representative(std::size_t i) const;
};

struct Homology {
    const Hochschild& H;
    explicit Homology(const Hochschild& h) : H(h) {}

    /* raw computation in a fixed window, no stabilization check */
    HomologyPresentation compute(Theory t, int n, const Grade& g, int S) const;
    /* compute, then compare with S+1 unless the window is exact */
    HomologyPresentation homology(Theory t, int n, const Grade& g, int S) const;
};

/* matrix sending source class i to the target coordinates of f(representative i) */
F2Matrix class_map(const HomologyPresentation& src, const HomologyPresentation& tgt,
                   const std::function<UChain(const UChain&)>& f);

enum class LesKind { minus_les, connes, per_les };

/* consecutive maps of a long exact sequence; maps[i] goes from spaces[i] to spaces[i+1] */
struct LesMaps {
    LesKind kind;
    std::vector<std::string> names;
    std::vector<F2Matrix> maps;
    std::vector<HomologyPresentation> spaces;
    bool stable = true;
};

/*
 * minus_les at n: HC-_{n+2} -.u-> HC-_n -h-> HH_n -d-> HC-_{n+1} -.u-> HC-_{n-1}
 * connes at n:    HH_n -I-> HC_n -.u-> HC_{n-2} -d-> HH_{n-1} -I-> HC_{n-1}
 * per_les at n:   HC-_n -i-> HCper_n -S-> HC_{n-2} -d-> HC-_{n-1} -i-> HCper_{n-1}
 */
LesMaps les_maps(const Hochschild& H, LesKind which, int n, const Grade& g, int S);
/* dim ker(maps[i+1]) == rank(maps[i]) at each interior joint */
bool les_exact(const LesMaps& m);

/* chain-level pieces of the sequences */
UChain connecting_minus(const Hochschild& H, const Chain& hh_cycle);
UChain connecting_connes(const Hochschild& H, const UChain& plus_cycle);
UChain connecting_per(const Hochschild& H, const UChain& plus_cycle, int S);
UChain project_h(const UChain& minus_chain);
UChain period_S(const UChain& per_chain);

struct PageEntry {
    int s = 0, t = 0;
    std::size_t dim = 0;
    /* E1 representatives are Hochschild cycles; E2 ones are cycles of d1 */
    std::vector<Chain> basis;
};

/* column filtration of T^{alpha,beta}; alpha = INT_MIN encodes minus infinity */
PageEntry e1_page(const Hochschild& H, int alpha, int beta, int s, int t, const Grade& g);
PageEntry e2_page(const Hochschild& H, int alpha, int beta, int s, int t, const Grade& g);

/* bounded worker pool size from CYCLO2_THREADS (default: hardware concurrency) */
unsigned worker_count();
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace cyclo2
