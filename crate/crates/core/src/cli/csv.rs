use std::io::Write;

use crate::error::{Error, Result};
use crate::rfgrowth::RFProfile;

/// Write `r,rf,witness_vector,witness_index` rows. The witness vector is
/// `;`-separated; rows at or after the first budget hit end in `,partial=1`.
pub fn emit_csv(profile: &RFProfile, dest: &mut dyn Write) -> Result<()> {
    if profile.entries.is_empty() {
        return Err(Error::Invalid("empty profile".into()));
    }
    let mut buf = String::from("r,rf,witness_vector,witness_index\n");
    for e in &profile.entries {
        let v: Vec<String> = e.witness_vector.iter().map(i64::to_string).collect();
        buf.push_str(&format!("{},{},{},{}", e.r, e.rf, v.join(";"), e.witness_index));
        if e.partial {
            buf.push_str(",partial=1");
        }
        buf.push('\n');
    }
    dest.write_all(buf.as_bytes())?;
    Ok(())
}
