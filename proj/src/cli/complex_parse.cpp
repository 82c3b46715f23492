#include "rankone/cli.hpp"

#include "rankone/errors.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace rankone::cli {

namespace {

double parse_real(std::string_view text, std::string_view whole)
{
    if (text == "" || text == "+") {
        return 1.0;
    }
    if (text == "-") {
        return -1.0;
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("cannot parse complex number '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

Complex parse_complex(std::string_view text)
{
    // Blanks are allowed at the ends and next to a sign, never inside a number.
    std::string s;
    bool pending_blank = false;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t') {
            pending_blank = !s.empty();
            continue;
        }
        if (pending_blank && ch != '+' && ch != '-' && s.back() != '+' && s.back() != '-') {
            throw InvalidArgument("cannot parse complex number '" + std::string(text) + "'");
        }
        pending_blank = false;
        s.push_back(ch);
    }
    if (s.empty()) {
        throw InvalidArgument("empty complex number");
    }
    Complex z;
    if (s.back() != 'i') {
        // A bare sign would read as +-1 below; a real part needs digits.
        if (s == "+" || s == "-") {
            throw InvalidArgument("cannot parse complex number '" + std::string(text) + "'");
        }
        z = Complex(parse_real(s, text), 0.0);
    } else {
        std::string_view body(s.data(), s.size() - 1);
        // Split at the last sign that does not belong to an exponent.
        std::size_t split = std::string_view::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string_view::npos) {
            z = Complex(0.0, parse_real(body, text));
        } else {
            std::string_view re = body.substr(0, split);
            if (re == "+" || re == "-") {
                throw InvalidArgument("cannot parse complex number '" + std::string(text) + "'");
            }
            z = Complex(parse_real(re, text), parse_real(body.substr(split), text));
        }
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("complex number '" + std::string(text) + "' is not finite");
    }
    return z;
}

} // namespace rankone::cli
