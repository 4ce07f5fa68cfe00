#include "recforge/estream.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace recforge {

IntStream IntStream::all() { return IntStream{}; }

IntStream IntStream::arith(Int a, Int step) {
    if (step <= 0) throw std::invalid_argument("arith step must be positive");
    IntStream s;
    s.kind_ = Kind::Arith;
    s.a_ = std::move(a);
    s.step_ = std::move(step);
    return s;
}

IntStream IntStream::powers(Int base) {
    if (base < 2) throw std::invalid_argument("power base must be >= 2");
    IntStream s;
    s.kind_ = Kind::Powers;
    s.base_ = std::move(base);
    return s;
}

IntStream IntStream::geometric(Int a, Int ratio) {
    if (a < 1 || ratio < 2)
        throw std::invalid_argument("geometric needs a >= 1, ratio >= 2");
    IntStream s;
    s.kind_ = Kind::Geometric;
    s.a_ = std::move(a);
    s.base_ = std::move(ratio);
    return s;
}

IntStream IntStream::from_list(std::vector<Int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    IntStream s;
    s.kind_ = Kind::File;
    s.elems_ = std::move(elems);
    return s;
}

std::optional<IntStream> IntStream::parse(const std::string& spec) {
    try {
        if (spec == "all") return all();
        if (spec.rfind("arith:", 0) == 0) {
            auto body = spec.substr(6);
            auto comma = body.find(',');
            if (comma == std::string::npos) return std::nullopt;
            return arith(Int(body.substr(0, comma)), Int(body.substr(comma + 1)));
        }
        if (spec.rfind("powers:", 0) == 0) return powers(Int(spec.substr(7)));
        if (spec.rfind("file:", 0) == 0) {
            std::ifstream in(spec.substr(5));
            if (!in) return std::nullopt;
            std::vector<Int> v;
            std::string line;
            while (std::getline(in, line)) {
                // strip whitespace; skip blanks
                std::string t;
                for (char c : line)
                    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
                if (!t.empty()) v.emplace_back(t);
            }
            return from_list(std::move(v));
        }
    } catch (...) {
        return std::nullopt;
    }
    return std::nullopt;
}

Int IntStream::element(std::uint64_t i) const {
    switch (kind_) {
        case Kind::All:
            return Int(i);
        case Kind::Arith:
            return a_ + step_ * Int(i);
        case Kind::Powers:
        case Kind::Geometric: {
            Int r = kind_ == Kind::Powers ? Int(1) : a_;
            for (std::uint64_t j = 0; j < i; ++j) r *= base_;
            return r;
        }
        case Kind::File:
            if (i >= elems_.size())
                throw std::out_of_range("finite stream exhausted");
            return elems_[i];
    }
    throw std::logic_error("unreachable");
}

bool IntStream::contains(const Int& x) const {
    switch (kind_) {
        case Kind::All:
            return x >= 0;
        case Kind::Arith:
            return x >= a_ && (x - a_) % step_ == 0;
        case Kind::Powers: {
            if (x < 1) return false;
            Int r = x;
            while (r % base_ == 0) r /= base_;
            return r == 1;
        }
        case Kind::Geometric: {
            if (x < a_ || x % a_ != 0) return false;
            Int r = x / a_;
            while (r % base_ == 0) r /= base_;
            return r == 1;
        }
        case Kind::File:
            return std::binary_search(elems_.begin(), elems_.end(), x);
    }
    return false;
}

bool IntStream::is_difference(const Int& x) const {
    if (x == 0) return true;
    Int ax = x < 0 ? Int(-x) : x;
    switch (kind_) {
        case Kind::All:
            return true;
        case Kind::Arith:
            return ax % step_ == 0;
        case Kind::Powers:
        case Kind::Geometric: {
            // x = c*(b^i - b^j), i > j >= 0 (c = 1 or the geometric start):
            // strip the scale and the largest power of b; the remaining
            // cofactor is b^(i-j) - 1, so cofactor + 1 must be a power of b.
            Int r = ax;
            if (kind_ == Kind::Geometric) {
                if (r % a_ != 0) return false;
                r /= a_;
            }
            while (r % base_ == 0) r /= base_;
            Int q = r + 1;
            while (q % base_ == 0) q /= base_;
            return q == 1;
        }
        case Kind::File: {
            for (const auto& e : elems_)
                if (std::binary_search(elems_.begin(), elems_.end(), e + ax))
                    return true;
            return false;
        }
    }
    return false;
}

std::string IntStream::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::All:
            os << "all";
            break;
        case Kind::Arith:
            os << "arith:" << a_ << "," << step_;
            break;
        case Kind::Powers:
            os << "powers:" << base_;
            break;
        case Kind::Geometric:
            os << "geometric:" << a_ << "," << base_;
            break;
        case Kind::File:
            os << "list(" << elems_.size() << " elements)";
            break;
    }
    return os.str();
}

}  // namespace recforge
