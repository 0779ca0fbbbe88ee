#ifndef QMOCK_CATALOG_HPP
#define QMOCK_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmock/appell_lerch.hpp"

namespace qmock {

// The sixteen mock theta functions of orders 2, 6 and 8.
enum class MockName {
    A2,
    B2,
    mu2,
    phi6,
    psi6,
    rho6,
    sigma6,
    lambda6,
    mu6,
    psiminus6,
    S08,
    S18,
    U08,
    U18,
    V08,
    V18,
};

inline constexpr MockName kAllMockNames[] = {
    MockName::A2,    MockName::B2,     MockName::mu2,  MockName::phi6,
    MockName::psi6,  MockName::rho6,   MockName::sigma6, MockName::lambda6,
    MockName::mu6,   MockName::psiminus6, MockName::S08, MockName::S18,
    MockName::U08,   MockName::U18,    MockName::V08,  MockName::V18,
};

const char* to_string(MockName n);
std::optional<MockName> mock_name_from_string(const std::string& s);
int order_class(MockName n); // 2, 6 or 8

// The defining q-hypergeometric sum, expanded exactly to prec = order.
// Terms are generated through first-order recurrences in the summation index
// and summation stops once a term's valuation reaches the order.
QSeries eulerian_series(MockName name, long order);

// The Appell-Lerch representation (an Expression of AL terms plus theta
// quotients) and its expansion.
const Expression& al_rep(MockName name);
QSeries al_rep_series(MockName name, long order);

// First `count` coefficients P_f(0..count-1).
std::vector<Rational> coeffs(MockName name, long count);

// True when the Eulerian sum and the Appell-Lerch representation agree
// coefficientwise below `order`.
bool verify_entry(MockName name, long order);

// f(sign q^k) where sign is -1 when negate is set: substitute on top of a
// parity twist, computed at internal order ceil(order/k)+2 for soundness.
QSeries transformed_series(MockName name, long k, bool negate, long order);

} // namespace qmock

#endif
