#include "magmar/model_string.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace magmar {

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos,
                             const std::string& what) {
    std::ostringstream os;
    os << "model string \"" << text << "\": " << what << " at position " << pos;
    throw std::invalid_argument(os.str());
}

CopulaSpec default_copula(Family f) {
    switch (f) {
        case Family::normal: return CopulaSpec::normal(0.0);
        case Family::t: return CopulaSpec::t(0.0, 10.0);
        case Family::gumbel: return CopulaSpec::gumbel(1.5);
        case Family::independence: return CopulaSpec::independence();
    }
    throw std::domain_error("unknown copula family");
}

class Scanner {
public:
    explicit Scanner(const std::string& text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    void expect(char c) {
        if (done() || text_[pos_] != c) {
            std::ostringstream os;
            os << "expected '" << c << "'";
            parse_fail(text_, pos_, os.str());
        }
        ++pos_;
    }

    void expect_literal(const std::string& lit) {
        for (char c : lit) expect(c);
    }

    void skip_spaces() {
        while (!done() && text_[pos_] == ' ') ++pos_;
    }

    std::size_t parse_count() {
        skip_spaces();
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
            parse_fail(text_, pos_, "expected a nonnegative integer");
        std::size_t v = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (v > 64) parse_fail(text_, pos_, "order is implausibly large");
            ++pos_;
        }
        skip_spaces();
        return v;
    }

    std::vector<CopulaSpec> parse_codes(std::size_t count, const char* part) {
        std::vector<CopulaSpec> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            if (done())
                parse_fail(text_, pos_,
                           std::string("missing ") + part + " copula code");
            const char c = peek();
            try {
                out.push_back(default_copula(family_from_code(c)));
            } catch (const std::domain_error&) {
                std::ostringstream os;
                os << "invalid copula code '" << c << "'";
                parse_fail(text_, pos_, os.str());
            }
            ++pos_;
        }
        return out;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace

MagmarSpec parse_model_string(const std::string& text) {
    Scanner sc(text);
    sc.expect_literal("MAGMAR(");
    const std::size_t p = sc.parse_count();
    sc.expect(',');
    const std::size_t q = sc.parse_count();
    sc.expect(')');

    MagmarSpec spec;
    if (p > 0) {
        sc.expect('-');
        spec.ar.copulas = sc.parse_codes(p, "AR");
    }
    if (q > 0) {
        sc.expect('-');
        spec.mag.copulas = sc.parse_codes(q, "MAG");
    }
    if (!sc.done())
        parse_fail(text, sc.pos(), "unexpected trailing characters");
    return spec;
}

std::string format_model_string(const MagmarSpec& spec) {
    std::ostringstream os;
    os << "MAGMAR(" << spec.p() << "," << spec.q() << ")";
    if (spec.p() > 0) {
        os << "-";
        for (const auto& c : spec.ar.copulas) os << family_code(c.family);
    }
    if (spec.q() > 0) {
        os << "-";
        for (const auto& c : spec.mag.copulas) os << family_code(c.family);
    }
    return os.str();
}

} // namespace magmar
