#ifndef TORICDT_TORICDT_HPP
#define TORICDT_TORICDT_HPP

#include "toricdt/rational.hpp"
#include "toricdt/partitions.hpp"
#include "toricdt/laurent.hpp"
#include "toricdt/charcalc.hpp"
#include "toricdt/geometry.hpp"
#include "toricdt/dtsum.hpp"
#include "toricdt/rational_fn.hpp"
#include "toricdt/gwref.hpp"
#include "toricdt/cli.hpp"

#endif // TORICDT_TORICDT_HPP
