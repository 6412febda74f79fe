#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace drw {

enum class ErrorKind { Usage, Parse, Degree, Window, Domain, Resource, Context };

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind k, const std::string& msg);

bool is_prime(int64_t p);
int64_t ipow(int64_t b, int e);
// p-adic valuation; v_p(0) is reported as `cap`
int vp(int64_t x, int64_t p, int cap = 1 << 20);
int64_t mod(int64_t a, int64_t m);
int64_t mulmod(int64_t a, int64_t b, int64_t m);
int64_t powmod(int64_t a, int64_t e, int64_t m);
int64_t invmod(int64_t a, int64_t m);
int64_t floor_div(int64_t a, int64_t b);
int64_t ceil_div(int64_t a, int64_t b);

}  // namespace drw
