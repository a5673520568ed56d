#include "tseq/zbase.hpp"

#include <stdexcept>

namespace tseq::zbase {

namespace {

Int json_int(const nlohmann::json& v, const std::string& what) {
    if (v.is_string()) return parse_int(v.get<std::string>());
    if (v.is_number_integer()) return Int(v.dump());
    throw std::invalid_argument(what + ": expected a decimal string or integer");
}

std::size_t json_size(const nlohmann::json& v, const std::string& what) {
    Int n = json_int(v, what);
    if (n < 0 || n > 1'000'000) throw std::invalid_argument(what + ": out of range");
    return static_cast<std::size_t>(n.get_ui());
}

void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
    }
}

Rat json_fraction(const nlohmann::json& v, const std::string& what) {
    if (v.is_string()) return parse_fraction(v.get<std::string>());
    if (v.is_number_integer()) return Rat(Int(v.dump()));
    throw std::invalid_argument(what + ": expected a fraction string or integer");
}

}  // namespace

ModuliChain::ModuliChain(std::vector<Int> divisors) : divisors_(std::move(divisors)) {
    if (divisors_.empty()) throw std::invalid_argument("divisor chain must be nonempty");
    if (divisors_[0] != 1) throw std::invalid_argument("divisor chain must start with 1");
    for (std::size_t i = 0; i + 1 < divisors_.size(); ++i) {
        const Int& a = divisors_[i];
        const Int& b = divisors_[i + 1];
        if (b <= 0) throw std::invalid_argument("divisors must be positive");
        if (!mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()))
            throw std::invalid_argument("each divisor must divide the next");
        if (i >= 1 && !(a < b))
            throw std::invalid_argument("divisors must increase strictly from the second entry");
        if (i == 0 && a > b)
            throw std::invalid_argument("divisors must be nondecreasing");
    }
}

ModuliChain ModuliChain::padic(const Int& p, std::size_t depth) {
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    std::vector<Int> ds;
    ds.reserve(depth);
    Int d = 1;
    for (std::size_t i = 0; i < depth; ++i) {
        ds.push_back(d);
        d *= p;
    }
    return ModuliChain(std::move(ds));
}

ModuliChain ModuliChain::factorial(std::size_t depth) {
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    std::vector<Int> ds;
    ds.reserve(depth);
    Int d = 1;
    ds.push_back(d);  // 0! = 1
    for (std::size_t i = 1; i < depth; ++i) {
        d *= static_cast<unsigned long>(i);
        ds.push_back(d);
    }
    return ModuliChain(std::move(ds));
}

const Int& ModuliChain::divisor(std::size_t level) const {
    if (level >= divisors_.size()) throw std::out_of_range("level exceeds base depth");
    return divisors_[level];
}

bool ModuliChain::member(std::size_t level, const Int& x) const {
    const Int& d = divisor(level);
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

CharacterBase::CharacterBase(QuadIrr alpha, std::size_t depth)
    : alpha_(std::move(alpha)), depth_(depth) {
    if (alpha_.is_rational()) throw std::invalid_argument("base not Hausdorff");
    if (depth_ == 0) throw std::invalid_argument("depth must be >= 1");
}

Rat CharacterBase::delta(std::size_t level) {
    return make_rat(1, pow_int(2, static_cast<unsigned long>(level)));
}

bool CharacterBase::member(std::size_t level, const Int& x) const {
    if (level >= depth_) throw std::out_of_range("level exceeds base depth");
    if (x == 0) return true;
    return alpha_.scale(Rat(x)).dist_to_int_lt(delta(level));
}

Int CharacterBase::cover_radius(std::size_t level) const {
    if (level >= depth_) throw std::out_of_range("level exceeds base depth");
    Rat d = delta(level);
    SmallDenominator conv = first_good_denominator(alpha_, 2 * d);
    QuadIrr beta = alpha_.scale(Rat(conv.q)).shift(Rat(-conv.p));
    if (beta.sign() < 0) beta = -beta;
    // Shifts j*q for j = 0..J sweep a grid of spacing |beta| < 2*delta over
    // an interval of length J*|beta| >= 1 + 2|beta|, so some shift lands
    // within |beta|/2 < delta of an integer.
    Int J = beta.reciprocal().floor() + 3;
    return J * conv.q + 1;
}

NeighborhoodBase::NeighborhoodBase(ModuliChain chain) : moduli_(std::move(chain)) {
    config_["kind"] = "moduli";
    auto arr = nlohmann::json::array();
    for (const Int& d : moduli_->divisors()) arr.push_back(d.get_str());
    config_["divisors"] = arr;
}

NeighborhoodBase::NeighborhoodBase(CharacterBase character) : character_(std::move(character)) {
    config_["kind"] = "character";
    const QuadIrr& a = character_->alpha();
    nlohmann::json alpha;
    alpha["sqrt"] = a.radicand().get_str();
    if (a.irr_part() != 1) alpha["mul"] = fraction_str(a.irr_part());
    if (a.rat_part() != 0) alpha["add"] = fraction_str(a.rat_part());
    config_["alpha"] = alpha;
    config_["depth"] = character_->depth();
}

NeighborhoodBase NeighborhoodBase::from_json(const nlohmann::json& config) {
    if (!config.is_object()) throw std::invalid_argument("base config: expected an object");
    if (!config.contains("kind")) throw std::invalid_argument("base config: missing 'kind'");
    std::string kind = config.at("kind").get<std::string>();
    if (kind == "moduli") {
        reject_unknown_keys(config, {"kind", "divisors"}, "base config (moduli)");
        if (!config.contains("divisors") || !config.at("divisors").is_array())
            throw std::invalid_argument("base config (moduli): missing 'divisors' array");
        std::vector<Int> ds;
        for (const auto& v : config.at("divisors")) ds.push_back(json_int(v, "divisor"));
        return NeighborhoodBase(ModuliChain(std::move(ds)));
    }
    if (kind == "padic") {
        reject_unknown_keys(config, {"kind", "p", "depth"}, "base config (padic)");
        if (!config.contains("p") || !config.contains("depth"))
            throw std::invalid_argument("base config (padic): needs 'p' and 'depth'");
        Int p = json_int(config.at("p"), "p");
        std::size_t depth = json_size(config.at("depth"), "depth");
        NeighborhoodBase base{ModuliChain::padic(p, depth)};
        base.config_ = nlohmann::json{{"kind", "padic"}, {"p", p.get_str()}, {"depth", depth}};
        return base;
    }
    if (kind == "character") {
        reject_unknown_keys(config, {"kind", "alpha", "depth"}, "base config (character)");
        if (!config.contains("alpha") || !config.contains("depth"))
            throw std::invalid_argument("base config (character): needs 'alpha' and 'depth'");
        std::size_t depth = json_size(config.at("depth"), "depth");
        const auto& a = config.at("alpha");
        if (!a.is_object()) throw std::invalid_argument("alpha: expected an object");
        if (a.contains("sqrt")) {
            reject_unknown_keys(a, {"sqrt", "mul", "add"}, "alpha");
            Int d = json_int(a.at("sqrt"), "sqrt");
            if (d <= 0) throw std::invalid_argument("sqrt: radicand must be positive");
            Rat mul = a.contains("mul") ? json_fraction(a.at("mul"), "mul") : Rat(1);
            Rat add = a.contains("add") ? json_fraction(a.at("add"), "add") : Rat(0);
            QuadIrr alpha = quad_sqrt(d).scale(mul).shift(add);
            if (alpha.is_rational()) throw std::invalid_argument("base not Hausdorff");
            return NeighborhoodBase(CharacterBase(alpha, depth));
        }
        if (a.contains("cf")) {
            reject_unknown_keys(a, {"cf"}, "alpha");
            const auto& cf = a.at("cf");
            if (!cf.is_object()) throw std::invalid_argument("cf: expected {head, period}");
            reject_unknown_keys(cf, {"head", "period"}, "cf");
            std::vector<Int> head, period;
            if (cf.contains("head"))
                for (const auto& v : cf.at("head")) head.push_back(json_int(v, "cf head term"));
            if (cf.contains("period"))
                for (const auto& v : cf.at("period")) period.push_back(json_int(v, "cf period term"));
            if (period.empty()) throw std::invalid_argument("base not Hausdorff");
            QuadIrr alpha = cf_value(head, period);
            if (alpha.is_rational()) throw std::invalid_argument("base not Hausdorff");
            return NeighborhoodBase(CharacterBase(alpha, depth));
        }
        throw std::invalid_argument("alpha: expected 'sqrt' or 'cf' form");
    }
    throw std::invalid_argument("base config: unknown kind '" + kind + "'");
}

NeighborhoodBase NeighborhoodBase::from_json_text(const std::string& text) {
    return from_json(nlohmann::json::parse(text));
}

nlohmann::json NeighborhoodBase::to_json() const {
    return config_;
}

std::size_t NeighborhoodBase::depth() const {
    return moduli_ ? moduli_->depth() : character_->depth();
}

const ModuliChain& NeighborhoodBase::moduli() const {
    if (!moduli_) throw std::logic_error("not a moduli base");
    return *moduli_;
}

const CharacterBase& NeighborhoodBase::character() const {
    if (!character_) throw std::logic_error("not a character base");
    return *character_;
}

bool NeighborhoodBase::member(std::size_t level, const Int& x) const {
    return moduli_ ? moduli_->member(level, x) : character_->member(level, x);
}

Int NeighborhoodBase::cover_radius(std::size_t level) const {
    if (moduli_) return moduli_->divisor(level);
    return character_->cover_radius(level);
}

std::optional<std::size_t> NeighborhoodBase::separation_level(const Int& x,
                                                              std::size_t depth_cap) const {
    if (x == 0) throw std::invalid_argument("zero is in every neighborhood");
    std::size_t last = std::min(depth_cap, depth() - 1);
    for (std::size_t i = 0; i <= last; ++i)
        if (!member(i, x)) return i;
    return std::nullopt;
}

std::string NeighborhoodBase::describe() const {
    return config_.dump();
}

}  // namespace tseq::zbase
