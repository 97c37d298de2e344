#ifndef CCS_CCS_HPP
#define CCS_CCS_HPP

#include "ccs/equiv.hpp"
#include "ccs/errors.hpp"
#include "ccs/gen.hpp"
#include "ccs/laws.hpp"
#include "ccs/lts.hpp"
#include "ccs/parser.hpp"
#include "ccs/semantics.hpp"
#include "ccs/syntax.hpp"

#endif // CCS_CCS_HPP
