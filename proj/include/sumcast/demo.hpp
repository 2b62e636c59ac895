#ifndef SUMCAST_DEMO_HPP
#define SUMCAST_DEMO_HPP

#include "sumcast/network.hpp"

namespace sumcast {

// Three sources, three terminals, one path between every pair, and still no
// code can hand every terminal the sum: t3 sees only a function of (X1,X2)
// and a function of (X2,X3), each pinned down by what t1 and t2 need.
const char* counterexample_3s3t_json();
Network counterexample_3s3t();

// Same network with an extra edge giving t3 the middle source in the clear,
// which makes the sum computable again.
Network counterexample_3s3t_repaired();

} // namespace sumcast

#endif
