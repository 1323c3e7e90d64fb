#include "freeclt/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

namespace freeclt {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    std::size_t position() const { return pos_; }

    bool try_literal(const std::string& literal) {
        skip_space();
        if (text_.compare(pos_, literal.size(), literal) != 0) return false;
        pos_ += literal.size();
        return true;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    double number() {
        skip_space();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [next, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc())
            throw ParseError("expected a number", pos_);
        pos_ += static_cast<std::size_t>(next - begin);
        return value;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace

Measure parse_measure(const std::string& spec) {
    Cursor cur(spec);
    if (cur.at_end()) throw ParseError("expected a measure expression", 0);

    // Measure constructors validate semantics (normalization, admissibility);
    // report their rejections as parse errors anchored at the argument list.
    auto guarded = [&](std::size_t anchor, auto&& build) -> Measure {
        try {
            return build();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), anchor);
        }
    };

    if (cur.try_literal("semicircle")) {
        if (!cur.at_end()) throw ParseError("unexpected trailing input", cur.position());
        return Measure::semicircle();
    }
    if (cur.try_literal("arcsine")) {
        const std::size_t anchor = cur.position();
        cur.expect('(');
        const double center = cur.number();
        cur.expect(',');
        const double half_width = cur.number();
        cur.expect(')');
        if (!cur.at_end()) throw ParseError("unexpected trailing input", cur.position());
        return guarded(anchor, [&] { return Measure::arcsine(center, half_width); });
    }
    if (cur.try_literal("meixner")) {
        const std::size_t anchor = cur.position();
        cur.expect('(');
        const double a = cur.number();
        cur.expect(',');
        const double b = cur.number();
        cur.expect(',');
        const double d = cur.number();
        cur.expect(')');
        if (!cur.at_end()) throw ParseError("unexpected trailing input", cur.position());
        return guarded(anchor, [&] { return Measure::free_meixner(a, b, d); });
    }
    if (cur.try_literal("atoms")) {
        const std::size_t anchor = cur.position();
        cur.expect('(');
        std::vector<Atom> atoms;
        while (true) {
            cur.expect('(');
            Atom a;
            a.position = cur.number();
            cur.expect(',');
            a.weight = cur.number();
            cur.expect(')');
            atoms.push_back(a);
            if (cur.try_literal(",")) continue;
            break;
        }
        cur.expect(')');
        const bool standardized = cur.try_literal(":std");
        if (!cur.at_end()) throw ParseError("unexpected trailing input", cur.position());
        return guarded(anchor, [&] {
            Measure m = Measure::atomic(atoms);
            return standardized ? standardize(m) : m;
        });
    }
    throw ParseError("expected 'semicircle', 'arcsine', 'meixner', or 'atoms'", cur.position());
}

} // namespace freeclt
