#include "tseq/finvec.hpp"

#include <cctype>
#include <stdexcept>

namespace tseq {

namespace {

[[noreturn]] void syntax_error(const std::string& text, std::size_t pos, const std::string& what) {
    throw std::invalid_argument("finvec syntax error at position " + std::to_string(pos) + ": " +
                                what + " in '" + text + "'");
}

}  // namespace

FinVec FinVec::unit(std::size_t i) {
    return scaled_unit(i, 1);
}

FinVec FinVec::scaled_unit(std::size_t i, const Int& c) {
    FinVec v;
    v.add_term(i, c);
    return v;
}

Int FinVec::at(std::size_t i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? Int(0) : it->second;
}

void FinVec::add_term(std::size_t i, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(i, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

FinVec FinVec::operator+(const FinVec& o) const {
    FinVec r = *this;
    for (const auto& [i, c] : o.coeffs_) r.add_term(i, c);
    return r;
}

FinVec FinVec::operator-(const FinVec& o) const {
    FinVec r = *this;
    for (const auto& [i, c] : o.coeffs_) r.add_term(i, -c);
    return r;
}

FinVec FinVec::operator-() const {
    FinVec r;
    for (const auto& [i, c] : coeffs_) r.coeffs_.emplace(i, -c);
    return r;
}

Int FinVec::norm1() const {
    Int s = 0;
    for (const auto& [i, c] : coeffs_) s += abs(c);
    return s;
}

std::string FinVec::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : coeffs_) {
        if (c > 0 && !out.empty()) out += "+";
        if (c == -1) out += "-";
        else if (c != 1) out += c.get_str();
        out += "e" + std::to_string(i);
    }
    return out;
}

FinVec FinVec::parse(const std::string& text) {
    FinVec v;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto digits = [&](const char* what) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) syntax_error(text, pos, std::string("expected ") + what);
        return text.substr(start, pos - start);
    };

    skip_ws();
    if (pos == text.size()) syntax_error(text, pos, "empty input");
    if (text[pos] == '0' && pos + 1 == text.size()) return v;  // the zero vector

    bool first = true;
    while (true) {
        skip_ws();
        int sign = 1;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (!first) {
            syntax_error(text, pos, "expected '+' or '-' between terms");
        }
        Int coeff = 1;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            coeff = Int(digits("coefficient"));
        if (pos >= text.size() || text[pos] != 'e')
            syntax_error(text, pos, "expected 'e'");
        ++pos;
        std::string idx = digits("index");
        Int index(idx);
        if (index > 1'000'000'000) syntax_error(text, pos, "index too large");
        v.add_term(static_cast<std::size_t>(index.get_ui()), sign * coeff);
        skip_ws();
        if (pos == text.size()) break;
        first = false;
    }
    return v;
}

nlohmann::json FinVec::to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& [i, c] : coeffs_)
        arr.push_back(nlohmann::json::array({i, c.get_str()}));
    return arr;
}

FinVec FinVec::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("finvec json: expected an array of pairs");
    FinVec v;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument("finvec json: expected [index, \"coeff\"] pairs");
        std::size_t i = entry.at(0).get<std::size_t>();
        Int c = entry.at(1).is_string() ? parse_int(entry.at(1).get<std::string>())
                                        : Int(entry.at(1).dump());
        v.add_term(i, c);
    }
    return v;
}

}  // namespace tseq
