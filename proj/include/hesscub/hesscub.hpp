#ifndef HESSCUB_HESSCUB_HPP
#define HESSCUB_HESSCUB_HPP

#include "core.hpp"
#include "cubature.hpp"
#include "dilation.hpp"
#include "fixtures.hpp"
#include "hessenberg.hpp"
#include "moments.hpp"
#include "ortho_basis.hpp"

#endif // HESSCUB_HESSCUB_HPP
