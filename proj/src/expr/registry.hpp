// Process-wide interning of generators (symbols and kernel subterms).
#pragma once

#include "nullasd/expr.hpp"

#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace nullasd::detail {

struct GenInfo {
    bool is_symbol = true;
    std::string name;  // symbol name
    Kernel fn = Kernel::exp;
    Expr arg;
    std::string key;  // display text, canonical across runs
    std::set<std::string> free;
};

class Registry {
public:
    GenId intern_symbol(const std::string& name);
    GenId intern_kernel(Kernel k, const Expr& arg);
    const GenInfo& info(GenId g) const;

    // Derivative of a generator with respect to a symbol, memoized.
    Expr derivative(GenId g, const std::string& var);

    // Known denominator factors, smallest first, used to split new denominators.
    std::vector<Poly> factors_snapshot() const;
    void add_factor(const Poly& f);

private:
    mutable std::mutex mu_;
    std::vector<std::unique_ptr<GenInfo>> infos_;
    std::unordered_map<std::string, GenId> by_key_;
    std::map<std::pair<GenId, std::string>, Expr> dcache_;
    std::vector<Poly> factors_;
};

Registry& registry();

const char* kernel_name(Kernel k);

}  // namespace nullasd::detail
