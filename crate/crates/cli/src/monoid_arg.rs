use std::fmt;
use std::str::FromStr;

use bq_core::free_product::FreeProduct;
use bq_core::product::ProductMonoid;
use bq_core::{free_product, direct_product, CatalogMonoid, Error};

/// A monoid named on the command line.
#[derive(Clone, Debug)]
pub enum AnyMonoid {
    Catalog(CatalogMonoid),
    Product(ProductMonoid<CatalogMonoid, CatalogMonoid>),
    FreeProduct(FreeProduct<CatalogMonoid, CatalogMonoid>),
}

/// Splits `m:m` where either side may itself be `free:<k>`.
fn two_factors(s: &str) -> Result<(CatalogMonoid, CatalogMonoid), Error> {
    let tokens: Vec<&str> = s.split(':').collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] == "free" && i + 1 < tokens.len() {
            parts.push(format!("free:{}", tokens[i + 1]));
            i += 2;
        } else {
            parts.push(tokens[i].to_string());
            i += 1;
        }
    }
    match parts.as_slice() {
        [a, b] => Ok((CatalogMonoid::by_name(a)?, CatalogMonoid::by_name(b)?)),
        _ => Err(Error::Invalid(format!("expected two factors in `{s}`"))),
    }
}

impl FromStr for AnyMonoid {
    type Err = Error;

    fn from_str(s: &str) -> Result<AnyMonoid, Error> {
        if let Some(rest) = s.strip_prefix("prod:") {
            let (a, b) = two_factors(rest)?;
            Ok(AnyMonoid::Product(direct_product(a, b)))
        } else if let Some(rest) = s.strip_prefix("freeprod:") {
            let (a, b) = two_factors(rest)?;
            Ok(AnyMonoid::FreeProduct(free_product(a, b)))
        } else {
            CatalogMonoid::by_name(s).map(AnyMonoid::Catalog)
        }
    }
}

impl AnyMonoid {
    pub fn catalog(&self) -> Result<&CatalogMonoid, Error> {
        match self {
            AnyMonoid::Catalog(m) => Ok(m),
            _ => Err(Error::Unsupported("this command takes a catalog monoid (R, S4, S5 or free:<k>)".into())),
        }
    }
}

impl fmt::Display for AnyMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use bq_core::monoid::Monoid;
        match self {
            AnyMonoid::Catalog(m) => f.write_str(m.name()),
            AnyMonoid::Product(m) => f.write_str(&m.name()),
            AnyMonoid::FreeProduct(m) => f.write_str(&m.name()),
        }
    }
}

/// Runs `$body` with `$m` bound to the concrete monoid.
#[macro_export]
macro_rules! with_monoid {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::monoid_arg::AnyMonoid::Catalog($m) => $body,
            $crate::monoid_arg::AnyMonoid::Product($m) => $body,
            $crate::monoid_arg::AnyMonoid::FreeProduct($m) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        assert!(matches!("R".parse::<AnyMonoid>().unwrap(), AnyMonoid::Catalog(_)));
        assert!(matches!("prod:R:S5".parse::<AnyMonoid>().unwrap(), AnyMonoid::Product(_)));
        assert!(matches!("freeprod:free:1:free:1".parse::<AnyMonoid>().unwrap(), AnyMonoid::FreeProduct(_)));
        assert!("prod:R".parse::<AnyMonoid>().is_err());
        assert!("S7".parse::<AnyMonoid>().is_err());
    }
}
